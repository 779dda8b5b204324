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

#include "crnt/io.hpp"
#include "crnt/linalg.hpp"
#include "crnt/translation.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crnt;
using namespace crnt::testing;

namespace {

struct Instance {
  ReactionNetwork orig;
  GeneralizedNetwork trans;
  TranslationCertificate cert;
};

Instance load_instance(const std::string& stem, bool with_certificate) {
  Instance in;
  in.orig = load_crn(stem + ".crn");
  in.trans = load_gcrn(stem + "_translation.gcrn");
  TranslationCertificate partial;
  if (with_certificate) partial = parse_certificate(read_file(fixture(stem + "_certificate.json")));
  auto cert = infer_certificate(in.orig, in.trans, partial);
  REQUIRE(cert);
  in.cert = *cert;
  return in;
}

std::vector<int> one_based(std::vector<int> v) {
  for (int& x : v) ++x;
  return v;
}

}  // namespace

TEST_CASE("certificates of the fixture translations") {
  SUBCASE("EnvZ is improper with fiber {6, 8}") {
    auto in = load_instance("envz", true);
    CHECK(check_certificate(in.orig, in.trans, in.cert).valid());
    CHECK(classify(in.cert) == TranslationKind::kImproper);
    CHECK(in.cert.h.at(5) == 5);
    CHECK(in.cert.h.at(7) == 5);
    auto sets = improper_sets(in.orig, in.trans, in.cert);
    CHECK(one_based(sets.C_I) == std::vector<int>{6});
  }
  SUBCASE("Lotka-Volterra is proper") {
    auto in = load_instance("lotka_volterra", true);
    CHECK(check_certificate(in.orig, in.trans, in.cert).valid());
    CHECK(classify(in.cert) == TranslationKind::kProper);
  }
  SUBCASE("PFK-2 merges {2, 5} and {9, 13}") {
    auto in = load_instance("pfk2", true);
    CHECK(check_certificate(in.orig, in.trans, in.cert).valid());
    auto sets = improper_sets(in.orig, in.trans, in.cert);
    CHECK(one_based(sets.C_I) == std::vector<int>{4, 8});
    CHECK(one_based(sets.unresolved.at(3)) == std::vector<int>{2, 5});
    CHECK(one_based(sets.unresolved.at(7)) == std::vector<int>{9, 13});
    CHECK(in.cert.h_K.at(3) == 1);
    CHECK(in.cert.h_K.at(7) == 8);
  }
}

TEST_CASE("a corrupted certificate is rejected") {
  auto in = load_instance("envz", true);
  REQUIRE_FALSE(in.cert.lambda.empty());
  auto bad = in.cert;
  bad.lambda.begin()->second += 1;
  CHECK_FALSE(check_certificate(in.orig, in.trans, bad).valid());
  auto wrong_h = in.cert;
  wrong_h.h[0] = 1;
  CHECK_FALSE(check_certificate(in.orig, in.trans, wrong_h).valid());
}

TEST_CASE("lambda aggregates to the translated weights") {
  for (const char* stem : {"envz", "pfk2", "lotka_volterra", "unresolvable"}) {
    auto in = load_instance(stem, true);
    auto b = aggregate_lambda(in.trans, in.cert);
    REQUIRE(b.size() == in.trans.base.reactions.size());
    for (std::size_t r = 0; r < b.size(); ++r) CHECK(b[r] == in.trans.base.reactions[r].weight);
  }
}

TEST_CASE("resolving sets and resolvability of the fixtures") {
  SUBCASE("EnvZ: C_R = {1, 3}, Theorem holds") {
    auto in = load_instance("envz", true);
    auto rep = analyze_resolvability(in.orig, in.trans, in.cert);
    REQUIRE(rep.resolving);
    CHECK(one_based(rep.resolving->C_R) == std::vector<int>{1, 3});
    CHECK(rep.lemma.holds);
    CHECK(rep.verdict.holds());
    CHECK(rep.resolvable());
  }
  SUBCASE("PFK-2: C_R = {1, 2}, C* = {3..9}, C** = {11}") {
    auto in = load_instance("pfk2", true);
    auto rep = analyze_resolvability(in.orig, in.trans, in.cert);
    REQUIRE(rep.resolving);
    CHECK(one_based(rep.resolving->C_R) == std::vector<int>{1, 2});
    REQUIRE(rep.sets);
    CHECK(one_based(rep.sets->C_star) == std::vector<int>{3, 4, 5, 6, 7, 8, 9});
    CHECK(one_based(rep.sets->C_star_star) == std::vector<int>{11});
    CHECK(rep.verdict.holds());
  }
  SUBCASE("the path-condition counterexample is not resolvable by the Lemma") {
    auto in = load_instance("unresolvable", true);
    auto rep = analyze_resolvability(in.orig, in.trans, in.cert);
    REQUIRE(rep.resolving);
    CHECK(one_based(rep.improper.C_I) == std::vector<int>{3});
    CHECK(one_based(rep.resolving->C_R) == std::vector<int>{1, 2});
    CHECK_FALSE(rep.lemma.holds);
    CHECK_FALSE(construct_theorem_witness(in.trans.base, rep.improper.C_I, rep.resolving->C_R));
    CHECK_FALSE(rep.resolvable());
  }
}

TEST_CASE("Theorem conditions reject malformed sets") {
  auto in = load_instance("envz", true);
  auto rep = analyze_resolvability(in.orig, in.trans, in.cert);
  REQUIRE(rep.sets);
  TheoremSets s = *rep.sets;
  s.R_star_star.clear();
  CHECK_FALSE(check_theorem_conditions(in.trans.base, rep.improper.C_I, rep.resolving->C_R, s).holds());
  s = *rep.sets;
  s.C_star_star.push_back(s.C_star.front());
  CHECK_FALSE(check_theorem_conditions(in.trans.base, rep.improper.C_I, rep.resolving->C_R, s).well_formed);
}

TEST_CASE("EnvZ rescaling multiplies k12 by k2(k4+k5)/(k1k3)") {
  auto in = load_instance("envz", true);
  auto rep = analyze_resolvability(in.orig, in.trans, in.cert);
  REQUIRE(rep.rescaling);
  CHECK(rep.rescaling->exact);
  auto k = [&](int i) { return in.orig.reactions[i].weight; };
  // Reaction order in the fixture: k1 k2 k3 k4 k6 k7 k9 k10 k12 k13 k5 k8 k11 k14.
  Rational factor = k(1) * (k(3) + k(10)) / (k(0) * k(2));
  CHECK(rep.rescaling->scale_factors.at(7) == factor);
  for (std::size_t r = 0; r < in.trans.base.reactions.size(); ++r) {
    const auto& tr = in.trans.base.reactions[r];
    Rational expected = tr.weight;
    if (tr.source == 5 && tr.target == 7) expected = k(8) * factor;
    CHECK(rep.rescaling->weights[r] == expected);
  }
}

TEST_CASE("tree constants: four-cycle with a chord") {
  ReactionNetwork net;
  for (int i = 0; i < 4; ++i) net.add_species("X" + std::to_string(i + 1));
  for (int i = 0; i < 4; ++i) net.add_complex(Complex(std::map<int, int>{{i, 1}}));
  Rational k1(2), k2(3), k3(5), k4(7), k5(11);
  net.add_reaction(0, 1, k1);
  net.add_reaction(1, 0, k2);
  net.add_reaction(1, 2, k3);
  net.add_reaction(2, 3, k4);
  net.add_reaction(3, 0, k5);
  auto K = tree_constants(net);
  CHECK(K[0] == k2 * k4 * k5 + k3 * k4 * k5);
  CHECK(enumerate_spanning_itrees(net, 0).size() == 2);
}

TEST_CASE("tree constants equal brute-force spanning-tree sums and span the Kirchhoff kernel") {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    int m = uniform_int(rng, 2, 6);
    int classes = uniform_int(rng, 1, std::min(2, m / 2));
    auto edges = random_wr_digraph(rng, m, uniform_int(rng, m, 12), classes);
    auto net = network_from_digraph(m, edges);
    auto K = tree_constants(net);
    for (int i = 0; i < m; ++i) {
      CHECK(K[i] == brute_force_tree_constant(net, i));
      Rational sum = 0;
      for (const auto& tree : enumerate_spanning_itrees(net, i)) sum += tree_weight(net, tree);
      CHECK(K[i] == sum);
      CHECK(K[i] > 0);
    }
    RatMatrix A = kirchhoff_matrix(net);
    for (const auto& cls : linkage_classes(net)) {
      RatVector v(m, Rational(0));
      for (int i : cls) v[i] = K[i];
      CHECK(is_zero(A.multiply(v)));
    }
  }
}

TEST_CASE("tree constants reject networks that are not weakly reversible") {
  ReactionNetwork net = network_from_digraph(2, {{{0, 1}, Rational(1)}});
  CHECK_THROWS_AS(tree_constants(net), NetworkError);
}

TEST_CASE("Lemma and Theorem agree on random improper instances") {
  Rng rng(31);
  int holds = 0;
  for (int t = 0; t < 100; ++t) {
    int m = uniform_int(rng, 3, 7);
    auto edges = random_wr_digraph(rng, m, uniform_int(rng, m, 2 * m), uniform_int(rng, 1, 2));
    auto net = network_from_digraph(m, edges);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[uniform_int(rng, 0, i)]);
    int ni = uniform_int(rng, 1, 2), nr = uniform_int(rng, 1, std::min(3, m - ni));
    std::vector<int> C_I(perm.begin(), perm.begin() + ni), C_R(perm.begin() + ni, perm.begin() + ni + nr);
    std::sort(C_I.begin(), C_I.end());
    std::sort(C_R.begin(), C_R.end());
    bool lemma = check_lemma_star(net, C_I, C_R).holds;
    auto w = construct_theorem_witness(net, C_I, C_R);
    bool theorem = w && check_theorem_conditions(net, C_I, C_R, *w).holds();
    CHECK(lemma == theorem);
    holds += lemma;
  }
  CHECK(holds > 0);
  CHECK(holds < 100);
}
