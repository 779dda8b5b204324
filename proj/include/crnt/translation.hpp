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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnt/graph.hpp"
#include "crnt/network.hpp"

namespace crnt {

// Witness that a generalized network is a reaction-weighted translation.
// h maps kinetically-relevant original complexes to translated complexes,
// h_K maps kinetically-relevant translated complexes back, and lambda holds
// the off-diagonal flux decomposition lambda(i, j') for j' != h(i).
struct TranslationCertificate {
  std::map<int, int> h;
  std::map<int, int> h_K;
  std::map<std::pair<int, int>, Rational> lambda;
};

struct CertificateVerdict {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

CertificateVerdict check_certificate(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                     const TranslationCertificate& cert);

// Exact nonnegative flux decomposition for a fixed h, or nullopt when
// properties 1(a)-(c) admit none.
std::optional<std::map<std::pair<int, int>, Rational>> solve_lambda(const ReactionNetwork& orig,
                                                                    const GeneralizedNetwork& trans,
                                                                    const std::map<int, int>& h);

// Completes a partial certificate. Missing h is searched with translated
// complexes whose kinetic complex equals y_i tried first; missing h_K picks the
// lowest original index per fiber with a matching kinetic complex; missing
// lambda comes from solve_lambda. nullopt when no completion exists.
std::optional<TranslationCertificate> infer_certificate(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                                        const TranslationCertificate& partial = {});

enum class TranslationKind { kProper, kImproper };

TranslationKind classify(const TranslationCertificate& cert);

struct ImproperSets {
  std::vector<int> C_I;
  std::map<int, std::vector<int>> unresolved;  // k' -> h^{-1}(k')
  std::vector<RatVector> subspace_basis;
};

ImproperSets improper_sets(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                           const TranslationCertificate& cert);

// Coefficients for one unresolved original complex i against the
// representative r of its fiber:
//   y_r - y_i = sum c(i', j') ((y_K)_{j'} - (y_K)_{i'}),  i' < j'.
struct PairResolution {
  int i = 0;
  int representative = 0;
  std::map<std::pair<int, int>, Rational> c;
};

struct ResolvingSet {
  std::vector<int> C_R;
  std::vector<PairResolution> pairs;
};

// nullopt when the improper subspace is not contained in the kinetic-order
// subspace restricted to linkage classes.
std::optional<ResolvingSet> find_resolving_set(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                               const TranslationCertificate& cert);

struct LemmaResult {
  bool holds = false;
  std::map<int, int> witness;  // p' -> k'
};

// When no resolving complex is reachable from p', the witness must lie
// outside C_I.
LemmaResult check_lemma_star(const ReactionNetwork& trans, const std::vector<int>& C_I,
                             const std::vector<int>& C_R);

struct TheoremSets {
  std::vector<int> C_star;
  std::vector<int> C_star_star;
  std::vector<Edge> R_star;
  std::vector<Edge> R_star_star;
};

struct TheoremVerdict {
  bool well_formed = false;  // disjoint sets, R** within C** x C*, R* targets inside the sets
  bool condition[4] = {false, false, false, false};
  bool holds() const { return well_formed && condition[0] && condition[1] && condition[2] && condition[3]; }
};

TheoremVerdict check_theorem_conditions(const ReactionNetwork& trans, const std::vector<int>& C_I,
                                        const std::vector<int>& C_R, const TheoremSets& sets);

std::optional<TheoremSets> construct_theorem_witness(const ReactionNetwork& trans, const std::vector<int>& C_I,
                                                     const std::vector<int>& C_R);

// Reaction indices of one spanning tree rooted at `root`.
struct SpanningTree {
  int root = 0;
  std::vector<int> reactions;
};

// Tree constant of every complex via the principal minor of the class
// Kirchhoff matrix. Throws NetworkError if the network is not weakly reversible.
std::vector<Rational> tree_constants(const ReactionNetwork& net);

// All spanning trees of root's linkage class with unique sink at root.
// Throws NetworkError if the class has more than `max_size` complexes.
std::vector<SpanningTree> enumerate_spanning_itrees(const ReactionNetwork& net, int root, int max_size = 12);

Rational tree_weight(const ReactionNetwork& net, const SpanningTree& tree);

struct Rescaling {
  std::map<int, Rational> scale_factors;  // original complex -> factor
  std::vector<Rational> weights;          // aligned with trans.base.reactions
  bool exact = true;
};

// Representatives default to cert.h_K.
Rescaling rescale_weights(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                          const TranslationCertificate& cert, const ResolvingSet& resolving);

// Rebuilds translated weights from lambda: b(i', j') = sum over the fiber.
std::vector<Rational> aggregate_lambda(const GeneralizedNetwork& trans, const TranslationCertificate& cert,
                                       const std::map<int, Rational>& factors = {});

struct ResolvabilityReport {
  ImproperSets improper;
  std::optional<ResolvingSet> resolving;  // nullopt when infeasible
  LemmaResult lemma;
  std::optional<TheoremSets> sets;  // nullopt when no witness was found
  TheoremVerdict verdict;
  std::vector<Rational> tree_constants;  // empty unless the translation is weakly reversible
  std::optional<Rescaling> rescaling;    // present when resolvable
  bool proper() const { return improper.C_I.empty(); }
  bool resolvable() const { return resolving.has_value() && verdict.holds(); }
};

// Runs the full resolvability pipeline. `given` replaces the constructed
// witness sets, for example with sets extracted from a solver.
ResolvabilityReport analyze_resolvability(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                          const TranslationCertificate& cert, const TheoremSets* given = nullptr);

}  // namespace crnt
