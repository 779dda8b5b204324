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

#include "crnt/network.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "crnt/graph.hpp"

namespace crnt {

Complex::Complex(std::map<int, int> coefficients) {
  for (const auto& [s, v] : coefficients) set(s, v);
}

Complex Complex::from_dense(const std::vector<int>& dense) {
  Complex c;
  for (std::size_t s = 0; s < dense.size(); ++s) c.set(static_cast<int>(s), dense[s]);
  return c;
}

int Complex::coefficient(int species) const {
  auto it = coeffs_.find(species);
  return it == coeffs_.end() ? 0 : it->second;
}

void Complex::set(int species, int value) {
  if (value < 0) throw NetworkError("negative stoichiometric coefficient");
  if (value == 0) {
    coeffs_.erase(species);
  } else {
    coeffs_[species] = value;
  }
}

std::vector<int> Complex::dense(int num_species) const {
  std::vector<int> v(num_species, 0);
  for (const auto& [s, c] : coeffs_) {
    if (s >= num_species) throw NetworkError("species index out of range");
    v[s] = c;
  }
  return v;
}

RatVector Complex::rational(int num_species) const {
  RatVector v(num_species);
  for (const auto& [s, c] : coeffs_) {
    if (s >= num_species) throw NetworkError("species index out of range");
    v[s] = c;
  }
  return v;
}

Complex Complex::shifted(const std::vector<int>& delta) const {
  Complex out = *this;
  for (std::size_t s = 0; s < delta.size(); ++s) {
    if (delta[s] == 0) continue;
    int v = coefficient(static_cast<int>(s)) + delta[s];
    if (v < 0) throw NetworkError("shift produces a negative coefficient");
    out.set(static_cast<int>(s), v);
  }
  return out;
}

int ReactionNetwork::add_species(const std::string& name) {
  int found = find_species(name);
  if (found >= 0) return found;
  species.push_back(name);
  return num_species() - 1;
}

int ReactionNetwork::find_species(const std::string& name) const {
  for (int i = 0; i < num_species(); ++i)
    if (species[i] == name) return i;
  return -1;
}

int ReactionNetwork::add_complex(const Complex& c) {
  int found = find_complex(c);
  if (found >= 0) return found;
  complexes.push_back(c);
  return num_complexes() - 1;
}

int ReactionNetwork::find_complex(const Complex& c) const {
  for (int i = 0; i < num_complexes(); ++i)
    if (complexes[i] == c) return i;
  return -1;
}

bool ReactionNetwork::add_reaction(int source, int target, const Rational& weight) {
  for (Reaction& r : reactions) {
    if (r.source == source && r.target == target) {
      r.weight += weight;
      return true;
    }
  }
  reactions.push_back({source, target, weight});
  return false;
}

void ReactionNetwork::validate() const {
  const int m = num_complexes();
  for (int i = 0; i < m; ++i) {
    for (const auto& [s, v] : complexes[i].coefficients()) {
      if (s < 0 || s >= num_species()) throw NetworkError("complex references unknown species");
      if (v <= 0) throw NetworkError("non-positive stoichiometric coefficient");
    }
    for (int j = i + 1; j < m; ++j) {
      if (complexes[i] == complexes[j]) {
        throw NetworkError("complexes " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " are not stoichiometrically distinct");
      }
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const Reaction& r : reactions) {
    if (r.source < 0 || r.source >= m || r.target < 0 || r.target >= m) {
      throw NetworkError("reaction endpoint out of range");
    }
    if (r.source == r.target) throw NetworkError("self-reaction at complex " + std::to_string(r.source + 1));
    if (r.weight <= 0) throw NetworkError("non-positive reaction weight");
    if (!seen.insert({r.source, r.target}).second) throw NetworkError("duplicate reaction");
  }
}

std::vector<int> ReactionNetwork::reaction_vector(int r) const {
  const Reaction& rx = reactions[r];
  std::vector<int> v = complexes[rx.target].dense(num_species());
  std::vector<int> y = complexes[rx.source].dense(num_species());
  for (int s = 0; s < num_species(); ++s) v[s] -= y[s];
  return v;
}

std::string ReactionNetwork::complex_string(const Complex& c) const {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [s, v] : c.coefficients()) {
    if (!first) out << " + ";
    first = false;
    if (v != 1) out << v << ' ';
    out << (s < num_species() ? species[s] : "S" + std::to_string(s + 1));
  }
  return out.str();
}

std::string ReactionNetwork::complex_string(int i) const { return complex_string(complexes[i]); }

void GeneralizedNetwork::validate() const {
  base.validate();
  if (kinetic.size() != base.complexes.size()) {
    throw NetworkError("kinetic complex list length differs from stoichiometric complex list");
  }
  for (const Complex& c : kinetic) {
    for (const auto& [s, v] : c.coefficients()) {
      if (s < 0 || s >= base.num_species()) throw NetworkError("kinetic complex references unknown species");
    }
  }
}

GeneralizedNetwork identity_generalization(const ReactionNetwork& net) {
  return GeneralizedNetwork{net, net.complexes};
}

namespace {

Digraph reaction_graph(const ReactionNetwork& net) {
  std::vector<Edge> edges;
  edges.reserve(net.reactions.size());
  for (const Reaction& r : net.reactions) edges.emplace_back(r.source, r.target);
  return Digraph(net.num_complexes(), edges);
}

int span_dim(const std::vector<RatVector>& vectors, int n) {
  if (vectors.empty()) return 0;
  return rank(RatMatrix::from_rows(vectors, n));
}

std::vector<RatVector> span_basis(const std::vector<RatVector>& vectors, int n) {
  if (vectors.empty()) return {};
  RatMatrix a = RatMatrix::from_rows(vectors, n);
  std::vector<int> pivots = rref(a);
  std::vector<RatVector> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    RatVector v(n);
    for (int c = 0; c < n; ++c) v[c] = a(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> reaction_vectors(const ReactionNetwork& net) {
  std::vector<RatVector> out;
  const int n = net.num_species();
  for (const Reaction& r : net.reactions) {
    RatVector v = net.complexes[r.target].rational(n);
    RatVector y = net.complexes[r.source].rational(n);
    for (int s = 0; s < n; ++s) v[s] -= y[s];
    out.push_back(std::move(v));
  }
  return out;
}

double monomial(const Complex& c, const std::vector<double>& x) {
  double value = 1.0;
  for (const auto& [s, v] : c.coefficients()) value *= std::pow(x[s], v);
  return value;
}

std::vector<double> rhs_with(const ReactionNetwork& net, const std::vector<Complex>& rate_complexes,
                             const std::vector<double>& x) {
  const int n = net.num_species();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("concentration vector has wrong length");
  std::vector<double> f(n, 0.0);
  std::vector<double> psi(rate_complexes.size());
  for (std::size_t i = 0; i < rate_complexes.size(); ++i) psi[i] = monomial(rate_complexes[i], x);
  for (const Reaction& r : net.reactions) {
    double rate = to_double(r.weight) * psi[r.source];
    for (const auto& [s, v] : net.complexes[r.target].coefficients()) f[s] += v * rate;
    for (const auto& [s, v] : net.complexes[r.source].coefficients()) f[s] -= v * rate;
  }
  return f;
}

}  // namespace

std::vector<std::vector<int>> linkage_classes(const ReactionNetwork& net) {
  return reaction_graph(net).weak_components();
}

std::vector<std::vector<int>> strong_linkage_classes(const ReactionNetwork& net) {
  return reaction_graph(net).strong_components();
}

bool is_weakly_reversible(const ReactionNetwork& net) {
  return linkage_classes(net) == strong_linkage_classes(net);
}

std::vector<RatVector> stoichiometric_basis(const ReactionNetwork& net) {
  return span_basis(reaction_vectors(net), net.num_species());
}

int stoichiometric_subspace_dim(const ReactionNetwork& net) {
  return span_dim(reaction_vectors(net), net.num_species());
}

int deficiency(const ReactionNetwork& net) {
  int m = net.num_complexes();
  int l = static_cast<int>(linkage_classes(net).size());
  return m - l - stoichiometric_subspace_dim(net);
}

std::vector<RatVector> conservation_basis(const ReactionNetwork& net) {
  const int n = net.num_species();
  std::vector<RatVector> vecs = reaction_vectors(net);
  if (vecs.empty()) {
    std::vector<RatVector> basis;
    for (int s = 0; s < n; ++s) {
      RatVector e(n);
      e[s] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  return nullspace(RatMatrix::from_rows(vecs, n));
}

KineticOrderAnalysis kinetic_order_analysis(const GeneralizedNetwork& gnet) {
  gnet.validate();
  const ReactionNetwork& net = gnet.base;
  const int n = net.num_species();
  std::vector<RatVector> diffs;
  // Edges of a connected class span all pairwise differences in it.
  for (const Reaction& r : net.reactions) {
    RatVector v = gnet.kinetic[r.target].rational(n);
    RatVector y = gnet.kinetic[r.source].rational(n);
    for (int s = 0; s < n; ++s) v[s] -= y[s];
    diffs.push_back(std::move(v));
  }
  KineticOrderAnalysis out;
  out.basis = span_basis(diffs, n);
  out.dim = static_cast<int>(out.basis.size());
  out.deficiency = net.num_complexes() - static_cast<int>(linkage_classes(net).size()) - out.dim;
  return out;
}

RatMatrix kirchhoff_matrix(const ReactionNetwork& net) {
  const int m = net.num_complexes();
  RatMatrix a(m, m);
  for (const Reaction& r : net.reactions) {
    a(r.target, r.source) += r.weight;
    a(r.source, r.source) -= r.weight;
  }
  return a;
}

std::vector<double> mass_action_rhs(const ReactionNetwork& net, const std::vector<double>& x) {
  return rhs_with(net, net.complexes, x);
}

std::vector<double> generalized_rhs(const GeneralizedNetwork& gnet, const std::vector<double>& x) {
  if (gnet.kinetic.size() != gnet.base.complexes.size()) {
    throw std::invalid_argument("kinetic complex list length differs from stoichiometric complex list");
  }
  return rhs_with(gnet.base, gnet.kinetic, x);
}

std::vector<RatVector> net_flux_vectors(const ReactionNetwork& net) {
  const int n = net.num_species();
  std::vector<RatVector> flux(net.num_complexes(), RatVector(n));
  for (const Reaction& r : net.reactions) {
    for (const auto& [s, v] : net.complexes[r.target].coefficients()) flux[r.source][s] += r.weight * v;
    for (const auto& [s, v] : net.complexes[r.source].coefficients()) flux[r.source][s] -= r.weight * v;
  }
  return flux;
}

std::vector<int> kinetically_relevant(const ReactionNetwork& net) {
  std::vector<RatVector> flux = net_flux_vectors(net);
  std::vector<int> out;
  for (int i = 0; i < net.num_complexes(); ++i)
    if (!is_zero(flux[i])) out.push_back(i);
  return out;
}

NetworkAnalysis analyze(const ReactionNetwork& net) {
  net.validate();
  NetworkAnalysis a;
  a.linkage_classes = linkage_classes(net);
  a.strong_linkage_classes = strong_linkage_classes(net);
  a.weakly_reversible = a.linkage_classes == a.strong_linkage_classes;
  a.stoich_dim = stoichiometric_subspace_dim(net);
  a.deficiency = net.num_complexes() - static_cast<int>(a.linkage_classes.size()) - a.stoich_dim;
  a.kinetically_relevant = kinetically_relevant(net);
  return a;
}

NetworkAnalysis analyze(const GeneralizedNetwork& gnet) {
  NetworkAnalysis a = analyze(gnet.base);
  KineticOrderAnalysis k = kinetic_order_analysis(gnet);
  a.generalized = true;
  a.kinetic_order_dim = k.dim;
  a.kinetic_deficiency = k.deficiency;
  return a;
}

}  // namespace crnt
