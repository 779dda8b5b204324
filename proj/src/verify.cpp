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

#include "crnt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crnt {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  Rng r(master ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return r.next();
}

std::vector<std::vector<double>> log_uniform_points(int dim, int count, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& v : p) v = rng.log_uniform(lo, hi);
  return pts;
}

double relative_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_deviation: dimension mismatch");
  double diff = 0, scale = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    diff = std::max(diff, std::fabs(a[s] - b[s]));
    scale = std::max({scale, std::fabs(a[s]), std::fabs(b[s])});
  }
  return scale == 0 ? 0 : diff / scale;
}

double check_dynamical_equivalence(const GeneralizedNetwork& a, const GeneralizedNetwork& b,
                                   const std::vector<std::vector<double>>& points) {
  double worst = 0;
  for (const auto& x : points) worst = std::max(worst, relative_deviation(generalized_rhs(a, x), generalized_rhs(b, x)));
  return worst;
}

double check_dynamical_equivalence(const ReactionNetwork& orig, const GeneralizedNetwork& gnet,
                                   const std::vector<std::vector<double>>& points) {
  return check_dynamical_equivalence(identity_generalization(orig), gnet, points);
}

namespace {

struct DenseSystem {
  int n = 0;
  struct Term {
    double weight;
    std::vector<std::pair<int, int>> kinetic;  // species, exponent
    Eigen::VectorXd change;
  };
  std::vector<Term> terms;
  double max_weight = 0;

  explicit DenseSystem(const GeneralizedNetwork& g) : n(g.base.num_species()) {
    for (const Reaction& r : g.base.reactions) {
      Term t;
      t.weight = to_double(r.weight);
      max_weight = std::max(max_weight, t.weight);
      for (const auto& [s, v] : g.kinetic[r.source].coefficients()) t.kinetic.emplace_back(s, v);
      t.change = Eigen::VectorXd::Zero(n);
      for (const auto& [s, v] : g.base.complexes[r.target].coefficients()) t.change[s] += v;
      for (const auto& [s, v] : g.base.complexes[r.source].coefficients()) t.change[s] -= v;
      terms.push_back(std::move(t));
    }
  }

  double rate(const Term& t, const Eigen::VectorXd& x) const {
    double r = t.weight;
    for (const auto& [s, e] : t.kinetic) r *= std::pow(x[s], e);
    return r;
  }

  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    for (const Term& t : terms) f += rate(t, x) * t.change;
    return f;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (const Term& t : terms) {
      const double r = rate(t, x);
      for (const auto& [s, e] : t.kinetic) j.col(s) += (r * e / x[s]) * t.change;
    }
    return j;
  }

  double scale(const Eigen::VectorXd& x) const {
    double m = 0;
    for (const Term& t : terms) m = std::max(m, rate(t, x));
    return m;
  }
};

// Orthonormal basis (as rows) of the span of the given rational vectors.
Eigen::MatrixXd orthonormal_rows(const std::vector<RatVector>& basis, int n) {
  if (basis.empty()) return Eigen::MatrixXd(0, n);
  Eigen::MatrixXd m(n, static_cast<int>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (int s = 0; s < n; ++s) m(s, static_cast<int>(c)) = to_double(basis[c][s]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, m.cols());
  return q.transpose();
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

constexpr double kBoundary = 1e-12;

}  // namespace

const char* const kBoundaryMessage = "trajectory approaches the boundary";

namespace {

struct Solver {
  const DenseSystem& sys;
  Eigen::MatrixXd P;  // rows span S
  Eigen::MatrixXd W;  // rows span S-perp
  Eigen::VectorXd c;  // W x0
  double tol;

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    Eigen::VectorXd F(sys.n);
    F.head(P.rows()) = P * sys.rhs(x);
    F.tail(W.rows()) = W * x - c;
    return F;
  }

  double conservation_error(const Eigen::VectorXd& x) const {
    if (W.rows() == 0) return 0;
    Eigen::VectorXd d = W * x - c;
    double e = 0;
    for (int i = 0; i < d.size(); ++i) e = std::max(e, std::fabs(d[i]) / std::max(1.0, std::fabs(c[i])));
    return e;
  }

  bool converged(const Eigen::VectorXd& x) const {
    return x.minCoeff() >= kBoundary && sys.rhs(x).lpNorm<Eigen::Infinity>() <= tol * sys.scale(x) &&
           conservation_error(x) <= 1e-12;
  }

  // Damped Newton in u = log x. Returns true on convergence.
  bool newton(Eigen::VectorXd& x, int max_iter, int& iterations) const {
    Eigen::VectorXd u = x.array().log();
    for (int it = 0; it < max_iter; ++it) {
      if (converged(x)) return true;
      ++iterations;
      Eigen::VectorXd F = residual(x);
      Eigen::MatrixXd J(sys.n, sys.n);
      J.topRows(P.rows()) = P * sys.jacobian(x) * x.asDiagonal();
      J.bottomRows(W.rows()) = W * x.asDiagonal();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
      if (!lu.isInvertible()) return false;
      Eigen::VectorXd du = lu.solve(-F);
      if (!du.allFinite()) return false;
      const double cap = du.lpNorm<Eigen::Infinity>();
      if (cap > 2.0) du *= 2.0 / cap;
      const double merit = F.norm();
      double step = 1.0;
      bool accepted = false;
      for (int k = 0; k < 40; ++k, step *= 0.5) {
        Eigen::VectorXd trial_u = u + step * du;
        Eigen::VectorXd trial_x = trial_u.array().exp();
        if (!trial_x.allFinite()) continue;
        if (residual(trial_x).norm() < (1 - 1e-4 * step) * merit || k == 39) {
          u = trial_u;
          x = trial_x;
          accepted = true;
          break;
        }
      }
      if (!accepted) return false;
    }
    return converged(x);
  }
};

}  // namespace

double flux_scale(const GeneralizedNetwork& gnet, const std::vector<double>& x) {
  return DenseSystem(gnet).scale(to_eigen(x));
}

double relative_residual(const GeneralizedNetwork& gnet, const std::vector<double>& x) {
  DenseSystem sys(gnet);
  const Eigen::VectorXd xe = to_eigen(x);
  const double scale = sys.scale(xe);
  const double r = sys.rhs(xe).lpNorm<Eigen::Infinity>();
  return scale == 0 ? r : r / scale;
}

SteadyState find_steady_state(const GeneralizedNetwork& gnet, const std::vector<double>& x0,
                              const SteadyStateOptions& options) {
  const int n = gnet.base.num_species();
  if (static_cast<int>(x0.size()) != n) throw std::invalid_argument("find_steady_state: dimension mismatch");
  for (double v : x0)
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("find_steady_state: x0 must be strictly positive");

  DenseSystem sys(gnet);
  Solver solver{sys, orthonormal_rows(stoichiometric_basis(gnet.base), n),
                orthonormal_rows(conservation_basis(gnet.base), n), Eigen::VectorXd(), options.tolerance};
  Eigen::VectorXd x = to_eigen(x0);
  solver.c = solver.W * x;

  SteadyState out;
  auto finish = [&](bool ok, const std::string& msg) {
    out.converged = ok;
    out.x = to_std(x);
    out.residual = sys.rhs(x).lpNorm<Eigen::Infinity>();
    out.conservation_error = solver.conservation_error(x);
    out.message = msg;
    return out;
  };

  Eigen::VectorXd trial = x;
  if (solver.newton(trial, options.max_newton, out.iterations)) {
    x = trial;
    return finish(true, "newton");
  }

  // Pseudo-transient continuation: linearized implicit Euler with a growing step.
  out.pseudo_transient = true;
  x = to_eigen(x0);
  double dt = 1e-2 / std::max(1e-300, std::max(sys.max_weight, sys.scale(x)));
  double prev = sys.rhs(x).norm();
  for (int step = 0; step < options.max_pseudo_steps; ++step) {
    ++out.iterations;
    Eigen::VectorXd f = sys.rhs(x);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) / dt - sys.jacobian(x);
    Eigen::VectorXd dx = m.partialPivLu().solve(f);
    if (!dx.allFinite()) {
      dt *= 0.25;
      continue;
    }
    double frac = 1.0;
    for (int s = 0; s < n; ++s)
      if (dx[s] < 0) frac = std::min(frac, 0.5 * x[s] / -dx[s]);
    Eigen::VectorXd next = x + frac * dx;
    const double now = sys.rhs(next).norm();
    if (!(now <= 100 * prev + 1e-300)) {
      dt *= 0.25;
      continue;
    }
    x = next;
    prev = now;
    dt *= frac < 1.0 ? 0.5 : 2.0;
    if (x.minCoeff() < kBoundary) return finish(false, kBoundaryMessage);
    if (step % 10 == 9 || solver.converged(x)) {
      trial = x;
      int extra = 0;
      if (solver.newton(trial, 20, extra)) {
        out.iterations += extra;
        x = trial;
        return finish(true, "pseudo-transient");
      }
    }
  }
  return finish(false, "no convergence within the iteration budget");
}

SteadyState find_steady_state(const ReactionNetwork& net, const std::vector<double>& x0,
                              const SteadyStateOptions& options) {
  return find_steady_state(identity_generalization(net), x0, options);
}

EquivalenceVerdict check_steady_state_equivalence(const ReactionNetwork& orig, const GeneralizedNetwork& gen,
                                                  int trials, std::uint64_t seed, double tolerance) {
  if (orig.num_species() != gen.base.num_species())
    throw std::invalid_argument("check_steady_state_equivalence: species counts differ");
  const GeneralizedNetwork base = identity_generalization(orig);
  EquivalenceVerdict v;
  v.tolerance = tolerance;
  std::uint64_t draw = 0;
  const std::uint64_t max_draws = 4 * static_cast<std::uint64_t>(std::max(trials, 1));
  while (static_cast<int>(v.trials.size()) < trials) {
    Rng rng(derive_seed(seed, draw++));
    std::vector<double> x0(orig.num_species());
    for (double& x : x0) x = rng.log_uniform(1e-2, 1e2);
    SteadyState a = find_steady_state(base, x0);
    SteadyState b = find_steady_state(gen, x0);
    const bool boundary = !a.converged && !b.converged && a.message == kBoundaryMessage &&
                          b.message == kBoundaryMessage;
    if (boundary && draw < max_draws) {
      ++v.redrawn;
      continue;
    }
    EquivalenceTrial trial;
    if (a.converged) {
      trial.forward_found = true;
      trial.forward_residual = relative_residual(gen, a.x);
    }
    if (b.converged) {
      trial.backward_found = true;
      trial.backward_residual = relative_residual(base, b.x);
    }
    if (!a.converged) trial.message = "original: " + a.message;
    if (!b.converged) trial.message += (trial.message.empty() ? "" : "; ") + std::string("generalized: ") + b.message;
    const double worst = std::max(trial.forward_residual, trial.backward_residual);
    v.max_residual = std::max(v.max_residual, worst);
    if (worst > tolerance)
      ++v.failed;
    else if (!trial.forward_found || !trial.backward_found)
      ++v.errored;
    else
      ++v.passed;
    v.trials.push_back(std::move(trial));
  }
  return v;
}

RatMatrix complex_flux_matrix(const GeneralizedNetwork& gnet) {
  const ReactionNetwork& net = gnet.base;
  const int n = net.num_species();
  const int m = net.num_complexes();
  const RatMatrix a = kirchhoff_matrix(net);
  RatMatrix out(n, m);
  for (int i = 0; i < m; ++i) {
    RatVector y = net.complexes[i].rational(n);
    for (int s = 0; s < n; ++s) {
      if (is_zero(y[s])) continue;
      for (int j = 0; j < m; ++j) out(s, j) += y[s] * a(i, j);
    }
  }
  return out;
}

std::vector<RatVector> kernel(const RatMatrix& a) { return nullspace(a); }

Eigen::MatrixXd kernel(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * (sv.size() ? sv[0] : 0.0);
  int r = 0;
  while (r < sv.size() && sv[r] > cutoff) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

std::optional<Rational> kernel_ratio_check(const GeneralizedNetwork& gnet, int i, int j) {
  const int m = gnet.base.num_complexes();
  if (i < 0 || i >= m || j < 0 || j >= m) throw std::out_of_range("kernel_ratio_check: complex index out of range");
  std::vector<RatVector> basis = kernel(complex_flux_matrix(gnet));
  std::vector<RatVector> projected;
  for (const RatVector& v : basis) projected.push_back(RatVector{v[i], v[j]});
  if (projected.empty()) return std::nullopt;
  RatMatrix p = RatMatrix::from_rows(projected, 2);
  if (rank(p) != 1) return std::nullopt;
  for (const RatVector& v : projected) {
    if (is_zero(v)) continue;
    if (is_zero(v[0]) || is_zero(v[1])) return std::nullopt;
    return Rational(v[0] / v[1]);
  }
  return std::nullopt;
}

}  // namespace crnt
