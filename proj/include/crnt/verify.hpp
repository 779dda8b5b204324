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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crnt/linalg.hpp"
#include "crnt/network.hpp"

namespace crnt {

// splitmix64 stream with a fixed mapping to doubles, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

// Per-trial seed derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

std::vector<std::vector<double>> log_uniform_points(int dim, int count, std::uint64_t seed, double lo = 1e-2,
                                                    double hi = 1e2);

// max_s |a_s - b_s| / max(max_s |a_s|, max_s |b_s|), zero when both vanish.
double relative_deviation(const std::vector<double>& a, const std::vector<double>& b);

// Largest relative deviation of the two right-hand sides over the points.
double check_dynamical_equivalence(const GeneralizedNetwork& a, const GeneralizedNetwork& b,
                                   const std::vector<std::vector<double>>& points);
double check_dynamical_equivalence(const ReactionNetwork& orig, const GeneralizedNetwork& gnet,
                                   const std::vector<std::vector<double>>& points);

// Largest single reaction rate k(i,j) x^{(y_K)_i}; the scale for residuals.
double flux_scale(const GeneralizedNetwork& gnet, const std::vector<double>& x);
// ||rhs(x)||_inf / flux_scale(x).
double relative_residual(const GeneralizedNetwork& gnet, const std::vector<double>& x);

struct SteadyStateOptions {
  int max_newton = 100;
  int max_pseudo_steps = 20000;
  double tolerance = 1e-10;  // ||rhs||_inf relative to the flux scale
};

// SteadyState::message when a trajectory leaves every positive compact set.
extern const char* const kBoundaryMessage;

struct SteadyState {
  bool converged = false;
  std::vector<double> x;
  double residual = 0;  // ||rhs(x)||_inf
  double conservation_error = 0;
  int iterations = 0;
  bool pseudo_transient = false;
  std::string message;
};

// Positive steady state in the compatibility class of x0: damped Newton in
// log coordinates on rhs restricted to S plus W x = W x0, falling back to
// pseudo-transient continuation. Components below 1e-12 count as boundary
// approach and are never reported as converged. Throws std::invalid_argument unless x0 > 0.
SteadyState find_steady_state(const GeneralizedNetwork& gnet, const std::vector<double>& x0,
                              const SteadyStateOptions& options = {});
SteadyState find_steady_state(const ReactionNetwork& net, const std::vector<double>& x0,
                              const SteadyStateOptions& options = {});

struct EquivalenceTrial {
  bool forward_found = false;
  double forward_residual = 0;  // generalized residual at the original steady state
  bool backward_found = false;
  double backward_residual = 0;  // original residual at the generalized steady state
  std::string message;
};

struct EquivalenceVerdict {
  std::vector<EquivalenceTrial> trials;
  double tolerance = 1e-8;
  int passed = 0;   // trials with both residuals within tolerance
  int failed = 0;   // trials with a residual above tolerance
  int errored = 0;  // trials where a steady state was not found
  int redrawn = 0;  // initial conditions replaced because neither system has a positive steady state there
  double max_residual = 0;
  bool equivalent() const { return failed == 0 && errored == 0 && passed > 0; }
};

// Initial conditions are log-uniform in [1e-2, 1e2] from per-draw seeds. A draw
// whose compatibility class drives both systems to the boundary is replaced,
// up to 4 * trials draws in total.
EquivalenceVerdict check_steady_state_equivalence(const ReactionNetwork& orig, const GeneralizedNetwork& gen,
                                                  int trials, std::uint64_t seed, double tolerance = 1e-8);

// Y * A(K) for a generalized network (stoichiometric complexes, n x m).
RatMatrix complex_flux_matrix(const GeneralizedNetwork& gnet);

std::vector<RatVector> kernel(const RatMatrix& a);
// Columns span the numerical nullspace; singular values below 1e-10 sigma_max count as zero.
Eigen::MatrixXd kernel(const Eigen::MatrixXd& a);

// Ratio v_i / v_j shared by every kernel vector of Y A(B) with support on i
// and j, or nullopt when the kernel does not fix it.
std::optional<Rational> kernel_ratio_check(const GeneralizedNetwork& gnet, int i, int j);

}  // namespace crnt
