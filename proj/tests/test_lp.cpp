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

#include <cmath>
#include <limits>
#include <optional>

#include "crnt/lp.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crnt;
using namespace crnt::testing;

namespace {

// Minimum over all vertices of the continuous polytope with the given
// variables fixed; every vertex is the solution of n active hyperplanes.
std::optional<double> vertex_oracle(const MilpModel& model, const std::vector<double>& lo,
                                    const std::vector<double>& hi) {
  int n = static_cast<int>(model.variables.size());
  std::vector<std::pair<std::vector<double>, double>> planes;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1;
    planes.emplace_back(e, lo[j]);
    if (hi[j] != lo[j]) planes.emplace_back(e, hi[j]);
  }
  for (const auto& row : model.rows) {
    std::vector<double> a(n, 0.0);
    for (const auto& [j, c] : row.terms) a[j] = c;
    planes.emplace_back(a, row.rhs);
  }
  int p = static_cast<int>(planes.size());
  std::optional<double> best;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int k, int start) {
    if (k == n) {
      Eigen::MatrixXd A(n, n);
      Eigen::VectorXd b(n);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) A(r, c) = planes[pick[r]].first[c];
        b[r] = planes[pick[r]].second;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() < n) return;
      Eigen::VectorXd x = lu.solve(b);
      std::vector<double> xv(x.data(), x.data() + n);
      for (int j = 0; j < n; ++j)
        if (xv[j] < lo[j] - 1e-9 || xv[j] > hi[j] + 1e-9) return;
      if (max_violation(model, xv, false) > 1e-9) return;
      double z = model.objective_offset;
      for (int j = 0; j < n; ++j) z += model.objective[j] * xv[j];
      if (!best || z < *best) best = z;
      return;
    }
    for (int i = start; i < p; ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  if (n == 0) return model.objective_offset;
  rec(0, 0);
  return best;
}

std::optional<double> milp_oracle(const MilpModel& model) {
  int n = static_cast<int>(model.variables.size());
  std::vector<int> bins;
  for (int j = 0; j < n; ++j)
    if (model.variables[j].kind == VarKind::kBinary) bins.push_back(j);
  std::optional<double> best;
  for (int mask = 0; mask < (1 << bins.size()); ++mask) {
    std::vector<double> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
      lo[j] = model.variables[j].lower;
      hi[j] = model.variables[j].upper;
    }
    bool ok = true;
    for (std::size_t t = 0; t < bins.size(); ++t) {
      double v = (mask >> t) & 1;
      if (v < lo[bins[t]] || v > hi[bins[t]]) ok = false;
      lo[bins[t]] = hi[bins[t]] = v;
    }
    if (!ok) continue;
    auto z = vertex_oracle(model, lo, hi);
    if (z && (!best || *z < *best)) best = z;
  }
  return best;
}

MilpModel random_model(Rng& rng, int continuous, int binaries, int rows) {
  MilpModel m;
  for (int j = 0; j < continuous; ++j)
    m.add_variable("x" + std::to_string(j), VarKind::kContinuous, uniform_int(rng, -3, 0), uniform_int(rng, 1, 4));
  for (int j = 0; j < binaries; ++j) m.add_variable("y" + std::to_string(j), VarKind::kBinary, 0, 1);
  int n = continuous + binaries;
  for (int r = 0; r < rows; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j)
      if (uniform_int(rng, 0, 2) > 0) terms.emplace_back(j, uniform_int(rng, -4, 4));
    RowSense sense = static_cast<RowSense>(uniform_int(rng, 0, 5) == 0 ? 2 : uniform_int(rng, 0, 1));
    m.add_row("r" + std::to_string(r), terms, sense, uniform_int(rng, -4, 4));
  }
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < n; ++j) obj.emplace_back(j, uniform_int(rng, -5, 5));
  m.set_objective(obj);
  return m;
}

}  // namespace

TEST_CASE("model construction") {
  MilpModel m;
  int x = m.add_variable("x", VarKind::kContinuous, 0, 2);
  int y = m.add_variable("y", VarKind::kBinary, 0, 1, 3);
  CHECK(m.find("x") == x);
  CHECK(m.find("z") == -1);
  CHECK(m.at("y") == y);
  CHECK_THROWS_AS(m.at("z"), std::out_of_range);
  CHECK_THROWS(m.add_variable("x", VarKind::kContinuous, 0, 1));
  CHECK_THROWS(m.add_variable("w", VarKind::kContinuous, 0, std::numeric_limits<double>::infinity()));
  m.add_row("r", {{x, 1}, {y, 2}, {x, 1}, {y, -2}}, RowSense::kLe, 3);
  REQUIRE(m.rows.size() == 1);
  CHECK(m.rows[0].terms == std::vector<std::pair<int, double>>{{x, 2.0}});
  CHECK(m.num_binaries() == 1);
}

TEST_CASE("small LPs and MILPs by hand") {
  SUBCASE("LP optimum at a vertex") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::kContinuous, 0, 10);
    int y = m.add_variable("y", VarKind::kContinuous, 0, 10);
    m.add_row("a", {{x, 1}, {y, 1}}, RowSense::kGe, 4);
    m.add_row("b", {{x, 1}, {y, -1}}, RowSense::kLe, 1);
    m.set_objective({{x, 2}, {y, 1}});
    auto s = solve_relaxation(m);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(s.objective == doctest::Approx(4));
  }
  SUBCASE("knapsack") {
    MilpModel m;
    std::vector<int> w = {5, 4, 3}, v = {10, 40, 30};
    std::vector<std::pair<int, double>> cap, obj;
    for (int i = 0; i < 3; ++i) {
      int j = m.add_variable("y" + std::to_string(i), VarKind::kBinary, 0, 1);
      cap.emplace_back(j, w[i]);
      obj.emplace_back(j, -v[i]);
    }
    m.add_row("cap", cap, RowSense::kLe, 7);
    m.set_objective(obj, 10);
    auto s = solve(m);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(s.objective == doctest::Approx(-70));
    CHECK(s.root_bound <= s.objective + 1e-9);
    CHECK(max_violation(m, s.values) <= 1e-7);
  }
  SUBCASE("contradictory bounds are infeasible") {
    MilpModel m;
    int x = m.add_variable("x", VarKind::kContinuous, 0, 1);
    m.add_row("r", {{x, 1}}, RowSense::kGe, 2);
    m.set_objective({{x, 1}});
    CHECK(solve(m).status == SolveStatus::kInfeasible);
    CHECK(solve_relaxation(m).status == SolveStatus::kInfeasible);
  }
  SUBCASE("integrality gap forces branching") {
    MilpModel m;
    int a = m.add_variable("a", VarKind::kBinary, 0, 1);
    int b = m.add_variable("b", VarKind::kBinary, 0, 1);
    m.add_row("r", {{a, 2}, {b, 2}}, RowSense::kEq, 2);
    m.add_row("s", {{a, 1}, {b, -1}}, RowSense::kEq, 0);
    m.set_objective({{a, 1}});
    CHECK(solve_relaxation(m).status == SolveStatus::kOptimal);
    CHECK(solve(m).status == SolveStatus::kInfeasible);
  }
}

TEST_CASE("LP relaxation matches vertex enumeration on random instances") {
  Rng rng(101);
  int feasible = 0;
  for (int t = 0; t < 150; ++t) {
    MilpModel m = random_model(rng, uniform_int(rng, 1, 3), 0, uniform_int(rng, 1, 4));
    std::vector<double> lo, hi;
    for (const auto& v : m.variables) {
      lo.push_back(v.lower);
      hi.push_back(v.upper);
    }
    auto oracle = vertex_oracle(m, lo, hi);
    auto s = solve_relaxation(m);
    CHECK((s.status == SolveStatus::kOptimal) == oracle.has_value());
    if (oracle && s.status == SolveStatus::kOptimal) {
      ++feasible;
      CHECK(s.objective == doctest::Approx(*oracle).epsilon(1e-7));
      CHECK(max_violation(m, s.values, false) <= 1e-7);
    }
  }
  CHECK(feasible > 30);
}

TEST_CASE("branch and bound matches enumeration on random mixed instances") {
  Rng rng(202);
  int feasible = 0;
  for (int t = 0; t < 150; ++t) {
    MilpModel m = random_model(rng, uniform_int(rng, 0, 2), uniform_int(rng, 1, 5), uniform_int(rng, 1, 5));
    auto oracle = milp_oracle(m);
    auto s = solve(m);
    CHECK((s.status == SolveStatus::kOptimal) == oracle.has_value());
    if (oracle && s.status == SolveStatus::kOptimal) {
      ++feasible;
      CHECK(s.objective == doctest::Approx(*oracle).epsilon(1e-7));
      CHECK(max_violation(m, s.values) <= 1e-7);
      CHECK(s.root_bound <= s.objective + 1e-7);
    }
  }
  CHECK(feasible > 30);
}

TEST_CASE("cost perturbation keeps pure binary optima exact") {
  Rng rng(303);
  int feasible = 0;
  for (int t = 0; t < 100; ++t) {
    MilpModel m = random_model(rng, 0, uniform_int(rng, 2, 6), uniform_int(rng, 1, 5));
    m.objective_granularity = 1;
    auto oracle = milp_oracle(m);
    auto s = solve(m);
    CHECK((s.status == SolveStatus::kOptimal) == oracle.has_value());
    if (oracle && s.status == SolveStatus::kOptimal) {
      ++feasible;
      CHECK(s.objective == doctest::Approx(*oracle).epsilon(1e-9));
      CHECK(s.root_bound <= s.objective + 1e-9);
    }
  }
  CHECK(feasible > 20);
}

TEST_CASE("solver is deterministic and honors the node limit") {
  Rng rng(7);
  MilpModel m = random_model(rng, 2, 8, 6);
  auto a = solve(m), b = solve(m);
  CHECK(a.status == b.status);
  CHECK(a.values == b.values);
  CHECK(a.nodes == b.nodes);
  SolverConfig cfg;
  cfg.max_nodes = 1;
  auto c = solve(m, cfg);
  CHECK(c.nodes <= 1);
  if (c.status != SolveStatus::kOptimal) CHECK(c.status == SolveStatus::kNodeLimit);
}

TEST_CASE("LP export") {
  MilpModel empty;
  CHECK(export_lp(empty) == "\\ crnt MILP\n");
  MilpModel m;
  int h = m.add_variable("H_3_7", VarKind::kBinary, 0, 1);
  int x = m.add_variable("lambda_1_2", VarKind::kContinuous, -10, 10);
  m.add_row("Trl1_h_1", {{h, 1}, {x, 0.5}}, RowSense::kEq, 1);
  m.set_objective({{x, 1}});
  std::string text = export_lp(m);
  for (const char* part : {"Minimize", "Subject To", "Trl1_h_1:", "H_3_7", "lambda_1_2", "Bounds", "Binaries", "End"})
    CHECK(text.find(part) != std::string::npos);
  m.add_row("extra", {{x, 1}}, RowSense::kLe, 3);
  CHECK(export_lp(m).size() > text.size());
}
