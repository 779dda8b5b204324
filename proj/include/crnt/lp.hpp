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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace crnt {

enum class VarKind { kContinuous, kBinary };
enum class RowSense { kLe, kGe, kEq };

struct MilpVariable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0;
  double upper = 0;
  int priority = 0;  // lower values are branched on first
};

struct MilpRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  RowSense sense = RowSense::kLe;
  double rhs = 0;
};

// Minimization model with finite variable bounds.
struct MilpModel {
  std::vector<MilpVariable> variables;
  std::vector<MilpRow> rows;
  std::vector<double> objective;  // aligned with variables
  double objective_offset = 0;
  // Positive when every feasible objective value is a multiple of it; used for pruning.
  double objective_granularity = 0;
  std::unordered_map<std::string, int> index;

  int add_variable(const std::string& name, VarKind kind, double lower, double upper, int priority = 0);
  // -1 when absent.
  int find(const std::string& name) const;
  int at(const std::string& name) const;  // throws std::out_of_range when absent
  int add_row(const std::string& name, std::vector<std::pair<int, double>> terms, RowSense sense, double rhs);
  void set_objective(const std::vector<std::pair<int, double>>& terms, double granularity = 0);
  int num_binaries() const;
};

struct SolverConfig {
  long max_nodes = 1000000;
  double max_seconds = 600;
  int threads = 1;
  std::uint64_t seed = 0;
  double integer_tolerance = 1e-6;
  double feasibility_tolerance = 1e-9;
  bool log = false;  // one line per node on stderr
};

enum class SolveStatus { kOptimal, kInfeasible, kNodeLimit, kTimeLimit };

const char* to_string(SolveStatus status);

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> values;
  double objective = 0;
  double root_bound = 0;
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0;
};

// Branch and bound over the LP relaxation: bounded dual simplex with lazily
// activated inequality rows, depth-first node order with best-bound ties,
// branching on the fractional binary of lowest priority value, most fractional
// first. Deterministic for a fixed model.
MilpSolution solve(const MilpModel& model, const SolverConfig& config = {});

// LP relaxation only (binaries relaxed to their bounds).
MilpSolution solve_relaxation(const MilpModel& model, const SolverConfig& config = {});

// Largest violation of any row or bound, and of integrality for binaries.
double max_violation(const MilpModel& model, const std::vector<double>& x, bool integrality = true);

// CPLEX LP text.
std::string export_lp(const MilpModel& model);

}  // namespace crnt
