// Copyright 2026 The crnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnt/linalg.hpp"
#include "crnt/rational.hpp"

namespace crnt {

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sparse stoichiometric vector; absent species have coefficient zero.
class Complex {
 public:
  Complex() = default;
  explicit Complex(std::map<int, int> coefficients);
  static Complex from_dense(const std::vector<int>& dense);

  const std::map<int, int>& coefficients() const { return coeffs_; }
  int coefficient(int species) const;
  void set(int species, int value);
  bool empty() const { return coeffs_.empty(); }

  std::vector<int> dense(int num_species) const;
  RatVector rational(int num_species) const;

  // Componentwise sum; throws NetworkError if a coefficient goes negative.
  Complex shifted(const std::vector<int>& delta) const;

  friend bool operator==(const Complex&, const Complex&) = default;
  friend bool operator<(const Complex& a, const Complex& b) { return a.coeffs_ < b.coeffs_; }

 private:
  std::map<int, int> coeffs_;
};

struct Reaction {
  int source = 0;
  int target = 0;
  Rational weight;
};

// (S, C, R, K): indices are zero-based throughout the library.
class ReactionNetwork {
 public:
  std::vector<std::string> species;
  std::vector<Complex> complexes;
  std::vector<Reaction> reactions;

  int num_species() const { return static_cast<int>(species.size()); }
  int num_complexes() const { return static_cast<int>(complexes.size()); }

  int add_species(const std::string& name);
  int find_species(const std::string& name) const;
  int add_complex(const Complex& c);
  int find_complex(const Complex& c) const;

  // Adds k(i,j); if (i,j) exists the weights are summed and true is returned.
  bool add_reaction(int source, int target, const Rational& weight);

  // Throws NetworkError on any broken invariant.
  void validate() const;

  std::vector<int> reaction_vector(int r) const;
  std::string complex_string(int i) const;
  std::string complex_string(const Complex& c) const;
};

// A network whose rate monomials come from the kinetic complexes.
struct GeneralizedNetwork {
  ReactionNetwork base;
  std::vector<Complex> kinetic;

  void validate() const;
};

GeneralizedNetwork identity_generalization(const ReactionNetwork& net);

struct KineticOrderAnalysis {
  int dim = 0;
  int deficiency = 0;
  std::vector<RatVector> basis;
};

struct NetworkAnalysis {
  std::vector<std::vector<int>> linkage_classes;
  std::vector<std::vector<int>> strong_linkage_classes;
  bool weakly_reversible = false;
  int stoich_dim = 0;
  int deficiency = 0;
  bool generalized = false;
  int kinetic_order_dim = 0;
  int kinetic_deficiency = 0;
  std::vector<int> kinetically_relevant;
};

// Partitions are sorted by smallest member; members ascend.
std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net);
std::vector<std::vector<int>> strong_linkage_classes(const ReactionNetwork& net);
bool is_weakly_reversible(const ReactionNetwork& net);

std::vector<RatVector> stoichiometric_basis(const ReactionNetwork& net);
int stoichiometric_subspace_dim(const ReactionNetwork& net);
int deficiency(const ReactionNetwork& net);

// Rational basis of the orthogonal complement of S (conservation laws).
std::vector<RatVector> conservation_basis(const ReactionNetwork& net);

KineticOrderAnalysis kinetic_order_analysis(const GeneralizedNetwork& gnet);

RatMatrix kirchhoff_matrix(const ReactionNetwork& net);

// Y * A(K) * Psi(x); throws std::invalid_argument on a dimension mismatch.
std::vector<double> mass_action_rhs(const ReactionNetwork& net, const std::vector<double>& x);
std::vector<double> generalized_rhs(const GeneralizedNetwork& gnet, const std::vector<double>& x);

// Sum_j k(i,j) (y_j - y_i) for every complex, exact.
std::vector<RatVector> net_flux_vectors(const ReactionNetwork& net);
std::vector<int> kinetically_relevant(const ReactionNetwork& net);

NetworkAnalysis analyze(const ReactionNetwork& net);
NetworkAnalysis analyze(const GeneralizedNetwork& gnet);

}  // namespace crnt
