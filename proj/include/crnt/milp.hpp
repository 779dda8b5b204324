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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnt/lp.hpp"
#include "crnt/network.hpp"
#include "crnt/translation.hpp"

namespace crnt {

class MilpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance data. Row i of Y and M is the i-th kinetically-relevant complex of
// the network (original order); M[i][k] is the net flux of complex i in species k.
struct MilpParameters {
  int n = 0;
  int q = 0;
  int m_tilde = 0;
  int s = 0;
  double epsilon = 0.1;
  int ell_star = 2;
  std::vector<int> relevant;                 // original complex index of each row of Y
  std::vector<std::vector<int>> Y;           // q x n
  std::vector<std::vector<int>> Y_tilde;     // m~ x n
  std::vector<std::vector<Rational>> M;      // q x n, exact
  std::vector<std::vector<double>> V;        // q x q, entries with i < j in [sqrt(eps), 1/sqrt(eps)]
  std::vector<Complex> candidates;
  std::vector<RatVector> conservation;       // basis of the orthogonal complement of S
  std::uint64_t seed = 0;

  int num_classes() const { return std::max(m_tilde - s, 1); }
  double big_m() const { return 1.0 / epsilon; }
};

// Throws MilpError on an empty candidate set or epsilon outside (0, 1).
MilpParameters init_parameters(const ReactionNetwork& net, const std::vector<Complex>& candidates, double epsilon,
                               int ell_star, std::uint64_t seed);

// Variable names: symbol plus 1-based indices, e.g. H_3_7, lambda_2_5, b_4_1.
// Families of the decision table: H lambda w b bs bss Cs Css dI dK c g gK gs L Ls.
// Edge-support indicators added by the builder: e es ess.
std::string var_name(const std::string& symbol, int a);
std::string var_name(const std::string& symbol, int a, int b);

// Declares every decision variable once and fixes those ruled out by the
// bound-tightening presolve (edges leaving a conservation class, images h(i)
// whose flux cannot be decomposed, unreachable lambda entries).
void declare_variables(MilpModel& model, const MilpParameters& params);

void add_translation_core(MilpModel& model, const MilpParameters& params);
void add_proper_restriction(MilpModel& model, const MilpParameters& params);
void add_improper_flux(MilpModel& model, const MilpParameters& params);
void add_weak_reversibility(MilpModel& model, const MilpParameters& params);
void add_deficiency_partition(MilpModel& model, const MilpParameters& params);
void add_resolvability(MilpModel& model, const MilpParameters& params);

enum class ObjectiveMode { kMinDeficiency, kMinComponents, kLexicographic };

// kMinDeficiency maximizes the number of nonempty classes, kMinComponents
// minimizes eps * sum (C* + C**). kLexicographic installs the first stage.
void set_objective(MilpModel& model, const MilpParameters& params, ObjectiveMode mode);

// All constraint sets; Trl2 only when proper_only.
MilpModel build_model(const MilpParameters& params, bool proper_only);

struct Extraction {
  GeneralizedNetwork trans;
  TranslationCertificate cert;
  ResolvabilityReport report;
  TheoremSets milp_sets;          // sets read from the solution, translated indices
  std::vector<int> used;          // candidate index of each translated complex
  std::vector<std::string> problems;  // empty when the solution passed every check
  bool translation_valid = false;     // certificate and weak reversibility passed
  bool ok() const { return problems.empty(); }
};

// Reads h, the edge support and the star sets from a solution, recomputes the
// weights and lambda exactly, and runs the certificate and Theorem checks.
Extraction extract_solution(const MilpSolution& sol, const MilpModel& model, const MilpParameters& params,
                            const ReactionNetwork& net);

struct TranslateOptions {
  double epsilon = 0.1;
  int ell_star = 2;
  bool proper_only = false;
  ObjectiveMode objective = ObjectiveMode::kLexicographic;
  std::uint64_t seed = 0;
  int max_retries = 10;
  SolverConfig solver;
};

enum class TranslateStatus { kFound, kInfeasible, kBudget, kRetriesExhausted };

struct TranslateResult {
  TranslateStatus status = TranslateStatus::kInfeasible;
  std::optional<Extraction> extraction;
  int num_classes = 0;    // optimal sum of L
  int star_size = 0;      // |C*| + |C**| at the optimum
  int retries = 0;
  std::vector<std::string> rejected;  // first problem of each rejected solution
  bool optimal = false;   // false when a budget stopped the search with an incumbent
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0;
  int variables = 0;
  int constraints = 0;
};

TranslateResult find_translation(const ReactionNetwork& net, const std::vector<Complex>& candidates,
                                 const TranslateOptions& options);

// Copy of net with every weight drawn uniformly from [sqrt(eps), 1/sqrt(eps)]
// and stored as the shortest decimal of the draw. Reactions sharing a source
// and an input weight share one draw.
ReactionNetwork randomize_weights(const ReactionNetwork& net, double epsilon, std::uint64_t seed);

// Kinetically-relevant complexes followed by y_i + d for d a sum of at most
// `depth` reaction vectors, keeping coefficients in [0, cap]; breadth-first
// order, duplicates dropped. Throws MilpError beyond `limit` candidates.
std::vector<Complex> generate_candidates(const ReactionNetwork& net, int depth, int cap = 3, int limit = 64);

}  // namespace crnt
