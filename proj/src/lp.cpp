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

#include "crnt/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace crnt {

int MilpModel::add_variable(const std::string& name, VarKind kind, double lower, double upper, int priority) {
  if (index.count(name)) throw std::invalid_argument("duplicate variable " + name);
  if (!(lower <= upper) || !std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("bad bounds for " + name);
  int id = static_cast<int>(variables.size());
  variables.push_back({name, kind, lower, upper, priority});
  objective.push_back(0);
  index.emplace(name, id);
  return id;
}

int MilpModel::find(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

int MilpModel::at(const std::string& name) const {
  int id = find(name);
  if (id < 0) throw std::out_of_range("no variable " + name);
  return id;
}

int MilpModel::add_row(const std::string& name, std::vector<std::pair<int, double>> terms, RowSense sense,
                       double rhs) {
  std::sort(terms.begin(), terms.end());
  std::vector<std::pair<int, double>> merged;
  for (const auto& [j, a] : terms) {
    if (j < 0 || j >= static_cast<int>(variables.size())) throw std::out_of_range("row " + name + ": bad variable");
    if (!merged.empty() && merged.back().first == j)
      merged.back().second += a;
    else
      merged.emplace_back(j, a);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second == 0; }),
               merged.end());
  rows.push_back({name, std::move(merged), sense, rhs});
  return static_cast<int>(rows.size()) - 1;
}

void MilpModel::set_objective(const std::vector<std::pair<int, double>>& terms, double granularity) {
  std::fill(objective.begin(), objective.end(), 0.0);
  for (const auto& [j, a] : terms) objective.at(j) += a;
  objective_granularity = granularity;
}

int MilpModel::num_binaries() const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(),
                                        [](const MilpVariable& v) { return v.kind == VarKind::kBinary; }));
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNodeLimit:
      return "node_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
  }
  return "unknown";
}

double max_violation(const MilpModel& model, const std::vector<double>& x, bool integrality) {
  double worst = 0;
  for (std::size_t j = 0; j < model.variables.size(); ++j) {
    const auto& v = model.variables[j];
    worst = std::max({worst, v.lower - x[j], x[j] - v.upper});
    if (integrality && v.kind == VarKind::kBinary) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  for (const auto& row : model.rows) {
    double act = 0;
    for (const auto& [j, a] : row.terms) act += a * x[j];
    if (row.sense != RowSense::kGe) worst = std::max(worst, act - row.rhs);
    if (row.sense != RowSense::kLe) worst = std::max(worst, row.rhs - act);
  }
  return worst;
}

namespace {

constexpr double kInf = 1e30;

// Domain propagation on row activities; binaries are rounded inward.
bool propagate(const MilpModel& model, std::vector<double>& lo, std::vector<double>& hi) {
  constexpr double kTol = 1e-9;
  for (int pass = 0; pass < 20; ++pass) {
    bool changed = false;
    for (const auto& row : model.rows) {
      double min_act = 0, max_act = 0;
      for (const auto& [j, a] : row.terms) {
        min_act += a > 0 ? a * lo[j] : a * hi[j];
        max_act += a > 0 ? a * hi[j] : a * lo[j];
      }
      bool le = row.sense != RowSense::kGe;
      bool ge = row.sense != RowSense::kLe;
      double scale = 1 + std::abs(row.rhs);
      if (le && min_act > row.rhs + 1e-7 * scale) return false;
      if (ge && max_act < row.rhs - 1e-7 * scale) return false;
      for (const auto& [j, a] : row.terms) {
        bool binary = model.variables[j].kind == VarKind::kBinary;
        double contrib_min = a > 0 ? a * lo[j] : a * hi[j];
        double contrib_max = a > 0 ? a * hi[j] : a * lo[j];
        // le: a x <= rhs - (min_act - contrib_min)
        if (le) {
          double slack = row.rhs - (min_act - contrib_min);
          if (a > 0) {
            double ub = slack / a + kTol;
            if (binary) ub = std::floor(ub + 1e-6);
            if (ub < hi[j] - (binary ? 0.5 : 1e-7 * (1 + std::abs(hi[j])))) {
              if (ub < lo[j] - kTol) return false;
              hi[j] = std::max(ub, lo[j]);
              changed = true;
            }
          } else {
            double lb = slack / a - kTol;
            if (binary) lb = std::ceil(lb - 1e-6);
            if (lb > lo[j] + (binary ? 0.5 : 1e-7 * (1 + std::abs(lo[j])))) {
              if (lb > hi[j] + kTol) return false;
              lo[j] = std::min(lb, hi[j]);
              changed = true;
            }
          }
        }
        if (ge) {
          double slack = row.rhs - (max_act - contrib_max);
          if (a > 0) {
            double lb = slack / a - kTol;
            if (binary) lb = std::ceil(lb - 1e-6);
            if (lb > lo[j] + (binary ? 0.5 : 1e-7 * (1 + std::abs(lo[j])))) {
              if (lb > hi[j] + kTol) return false;
              lo[j] = std::min(lb, hi[j]);
              changed = true;
            }
          } else {
            double ub = slack / a + kTol;
            if (binary) ub = std::floor(ub + 1e-6);
            if (ub < hi[j] - (binary ? 0.5 : 1e-7 * (1 + std::abs(hi[j])))) {
              if (ub < lo[j] - kTol) return false;
              hi[j] = std::max(ub, lo[j]);
              changed = true;
            }
          }
        }
        // Refresh activities after a change to this variable.
        double new_min = a > 0 ? a * lo[j] : a * hi[j];
        double new_max = a > 0 ? a * hi[j] : a * lo[j];
        min_act += new_min - contrib_min;
        max_act += new_max - contrib_max;
      }
    }
    if (!changed) break;
  }
  return true;
}

// Bounded dual simplex on [A -I](x; s) = 0 with an explicit basis inverse.
// Rows are activated incrementally; each activated row contributes a logical
// variable s_r = a_r x bounded by the row sense.
class DualSimplex {
 public:
  enum class Result { kOptimal, kInfeasible, kIterationLimit };

  // A positive perturbation budget adds small deterministic cost shifts whose
  // total effect on the objective stays below the budget.
  DualSimplex(const MilpModel& model, double tolerance, double perturbation = 0)
      : model_(model), n_(static_cast<int>(model.variables.size())), tol_(tolerance) {
    cost_ = model.objective;
    delta_.assign(n_, 0.0);
    if (perturbation > 0) {
      double range = 0;
      for (const auto& v : model.variables) range += std::max(std::abs(v.lower), std::abs(v.upper));
      double scale = perturbation / (2 * std::max(range, 1.0));
      std::uint64_t state = 0x9e3779b97f4a7c15ULL;
      for (int j = 0; j < n_; ++j) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        delta_[j] = scale * (1 + static_cast<double>(state >> 11) * 0x1.0p-53);
        cost_[j] += delta_[j];
      }
    }
    cols_.resize(n_);
    lo_.resize(n_);
    hi_.resize(n_);
    x_.resize(n_);
    d_.resize(n_);
    status_.resize(n_);
    pos_.assign(n_, -1);
    active_.assign(model.rows.size(), false);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = model.variables[j].lower;
      hi_[j] = model.variables[j].upper;
      d_[j] = cost_[j];
      place_nonbasic(j);
    }
  }

  int num_rows() const { return m_; }
  long iterations() const { return iterations_; }
  bool is_active(int model_row) const { return active_[model_row]; }
  const std::vector<double>& values() const { return x_; }

  double objective() const {
    double z = 0;
    for (int j = 0; j < n_; ++j) z += model_.objective[j] * x_[j];
    return z;
  }

  // Lower bound on the unperturbed optimum over the current bounds; valid
  // once the perturbed problem is solved to optimality.
  double bound() const {
    double z = 0;
    for (int j = 0; j < n_; ++j) z += cost_[j] * x_[j] - std::max(delta_[j] * lo_[j], delta_[j] * hi_[j]);
    return z;
  }

  void add_rows(const std::vector<int>& model_rows) {
    if (model_rows.empty()) return;
    int k = static_cast<int>(model_rows.size());
    int old_m = m_;
    Eigen::MatrixXd a_b = Eigen::MatrixXd::Zero(k, old_m);
    for (int t = 0; t < k; ++t) {
      int mr = model_rows[t];
      active_[mr] = true;
      const MilpRow& row = model_.rows[mr];
      int r = m_++;
      row_model_.push_back(mr);
      double value = 0;
      for (const auto& [j, a] : row.terms) {
        cols_[j].emplace_back(r, a);
        value += a * x_[j];
        if (pos_[j] >= 0) a_b(t, pos_[j]) = a;
      }
      double lo = row.sense == RowSense::kLe ? -kInf : row.rhs;
      double hi = row.sense == RowSense::kGe ? kInf : row.rhs;
      int v = n_ + r;
      lo_.push_back(lo);
      hi_.push_back(hi);
      x_.push_back(value);
      d_.push_back(0);
      status_.push_back(kBasic);
      pos_.push_back(static_cast<int>(head_.size()));
      head_.push_back(v);
    }
    Eigen::MatrixXd grown(m_, m_);
    grown.topLeftCorner(old_m, old_m) = binv_;
    grown.topRightCorner(old_m, k).setZero();
    grown.bottomLeftCorner(k, old_m) = a_b * binv_;
    grown.bottomRightCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
    binv_ = std::move(grown);
    weights_.conservativeResize(m_);
    for (int t = 0; t < k; ++t) weights_[old_m + t] = binv_.row(old_m + t).squaredNorm();
  }

  struct Basis {
    std::vector<int> head;
    std::vector<unsigned char> status;
  };

  std::shared_ptr<const Basis> snapshot() const {
    auto b = std::make_shared<Basis>();
    b->head = head_;
    b->status.assign(status_.begin(), status_.end());
    return b;
  }

  // Rows activated after the snapshot enter with their logicals basic.
  void restore(const Basis& basis) {
    int old_m = static_cast<int>(basis.head.size());
    for (int v = 0; v < n_ + m_; ++v) {
      pos_[v] = -1;
      status_[v] = v < static_cast<int>(basis.status.size()) ? static_cast<Status>(basis.status[v]) : kBasic;
    }
    head_ = basis.head;
    for (int r = old_m; r < m_; ++r) head_.push_back(n_ + r);
    for (int p = 0; p < m_; ++p) pos_[head_[p]] = p;
    for (int v = 0; v < n_ + m_; ++v) {
      if (status_[v] == kLower) x_[v] = lo_[v];
      if (status_[v] == kUpper) x_[v] = hi_[v];
    }
    refactor();
  }

  // Nonbasic variables move to the bound matching their reduced cost sign.
  void set_bounds(const std::vector<double>& lo, const std::vector<double>& hi) {
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(m_);
    bool moved = false;
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lo[j];
      hi_[j] = hi[j];
      if (status_[j] == kBasic) continue;
      double before = x_[j];
      place_nonbasic(j);
      double delta = x_[j] - before;
      if (delta != 0) {
        moved = true;
        for (const auto& [r, a] : cols_[j]) shift[r] += a * delta;
      }
    }
    if (moved) {
      Eigen::VectorXd change = binv_ * shift;
      for (int p = 0; p < m_; ++p) x_[head_[p]] -= change[p];
    }
  }

  Result run(long max_iterations) {
    long start = iterations_;
    bool retried = false;
    int degenerate = 0;
    while (true) {
      if (since_refactor_ >= kRefactorPeriod) refactor();
      if (iterations_ - start >= max_iterations) return Result::kIterationLimit;
      bool bland = degenerate > 50;
      int p = choose_leaving(bland);
      if (p < 0) {
        if (!clean_duals()) continue;
        return Result::kOptimal;
      }
      int leave = head_[p];
      bool to_lower = x_[leave] < lo_[leave];
      compute_alpha(p);
      int q = choose_entering(to_lower, bland);
      if (q < 0) {
        if (!retried && since_refactor_ > 10) {
          refactor();
          retried = true;
          continue;
        }
        return Result::kInfeasible;
      }
      retried = false;
      double step = pivot(p, q, to_lower);
      if (step < 0) continue;  // refactored after a pivot mismatch
      degenerate = step <= 1e-12 ? degenerate + 1 : 0;
    }
  }

 private:
  enum Status : unsigned char { kBasic, kLower, kUpper };
  static constexpr int kRefactorPeriod = 150;

  // Column of variable v: structural sparse column or -e_r for logical r.
  template <class F>
  void for_column(int v, F&& f) const {
    if (v < n_) {
      for (const auto& [r, a] : cols_[v]) f(r, a);
    } else {
      f(v - n_, -1.0);
    }
  }

  void place_nonbasic(int v) {
    double d = d_[v];
    if (lo_[v] == hi_[v]) {
      status_[v] = kLower;
      x_[v] = lo_[v];
    } else if (d > tol_ || (d >= -tol_ && status_[v] != kUpper)) {
      status_[v] = kLower;
      x_[v] = lo_[v];
    } else {
      status_[v] = kUpper;
      x_[v] = hi_[v];
    }
  }

  int choose_leaving(bool bland) const {
    int best = -1;
    double best_score = 0;
    int best_var = std::numeric_limits<int>::max();
    for (int p = 0; p < m_; ++p) {
      int v = head_[p];
      double infeas = 0;
      if (x_[v] < lo_[v] - tol_ * (1 + std::abs(lo_[v])))
        infeas = lo_[v] - x_[v];
      else if (x_[v] > hi_[v] + tol_ * (1 + std::abs(hi_[v])))
        infeas = x_[v] - hi_[v];
      if (infeas <= 0) continue;
      if (bland) {
        if (v < best_var) {
          best_var = v;
          best = p;
        }
        continue;
      }
      double score = infeas * infeas / std::max(weights_[p], 1e-12);
      if (score > best_score) {
        best_score = score;
        best = p;
      }
    }
    return best;
  }

  void compute_alpha(int p) {
    rho_ = binv_.row(p);
    alpha_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == kBasic) continue;
      double s = 0;
      for (const auto& [r, a] : cols_[j]) s += rho_[r] * a;
      alpha_[j] = s;
    }
    for (int r = 0; r < m_; ++r) {
      int v = n_ + r;
      if (status_[v] != kBasic) alpha_[v] = -rho_[r];
    }
  }

  bool eligible(int v, bool to_lower) const {
    if (status_[v] == kBasic || lo_[v] == hi_[v]) return false;
    double a = alpha_[v];
    if (std::abs(a) <= kPivotTol) return false;
    bool at_lower = status_[v] == kLower;
    return to_lower ? (at_lower ? a < 0 : a > 0) : (at_lower ? a > 0 : a < 0);
  }

  double dual_slack(int v) const { return status_[v] == kLower ? std::max(d_[v], 0.0) : std::max(-d_[v], 0.0); }

  int choose_entering(bool to_lower, bool bland) const {
    int total = n_ + m_;
    if (bland) {
      int best = -1;
      double best_ratio = kInf;
      for (int v = 0; v < total; ++v) {
        if (!eligible(v, to_lower)) continue;
        double ratio = dual_slack(v) / std::abs(alpha_[v]);
        if (ratio < best_ratio - 1e-15) {
          best_ratio = ratio;
          best = v;
        }
      }
      return best;
    }
    double bound = kInf;
    for (int v = 0; v < total; ++v) {
      if (!eligible(v, to_lower)) continue;
      bound = std::min(bound, (dual_slack(v) + tol_) / std::abs(alpha_[v]));
    }
    int best = -1;
    double best_alpha = 0;
    for (int v = 0; v < total; ++v) {
      if (!eligible(v, to_lower)) continue;
      double a = std::abs(alpha_[v]);
      if (dual_slack(v) / a <= bound && a > best_alpha) {
        best_alpha = a;
        best = v;
      }
    }
    return best;
  }

  // Returns the dual step length, or -1 when the pivot was abandoned.
  double pivot(int p, int q, bool to_lower) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
    for_column(q, [&](int r, double a) { w += a * binv_.col(r); });
    double aq = alpha_[q];
    if (std::abs(w[p] - aq) > 1e-7 * (1 + std::abs(aq))) {
      refactor();
      return -1;
    }
    int leave = head_[p];
    double t = dual_slack(q) / std::abs(aq);
    double theta = to_lower ? -t : t;
    int total = n_ + m_;
    for (int v = 0; v < total; ++v)
      if (status_[v] != kBasic) d_[v] -= theta * alpha_[v];
    d_[q] = 0;
    d_[leave] = -theta;

    double bound = to_lower ? lo_[leave] : hi_[leave];
    double delta = (x_[leave] - bound) / w[p];
    for (int k = 0; k < m_; ++k) x_[head_[k]] -= delta * w[k];
    x_[q] += delta;
    x_[leave] = bound;

    head_[p] = q;
    pos_[q] = p;
    pos_[leave] = -1;
    status_[q] = kBasic;
    status_[leave] = to_lower ? kLower : kUpper;

    Eigen::RowVectorXd rp = binv_.row(p) / w[p];
    w[p] = 0;
    binv_.noalias() -= w * rp;
    binv_.row(p) = rp;
    weights_ = binv_.rowwise().squaredNorm();
    ++iterations_;
    ++since_refactor_;
    return t;
  }

  // Flips boxed nonbasics whose reduced cost has the wrong sign. Returns
  // false when a flip made the primal infeasible again.
  bool clean_duals() {
    bool flipped = false;
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(m_);
    for (int v = 0; v < n_ + m_; ++v) {
      if (status_[v] == kBasic || lo_[v] == hi_[v]) continue;
      bool wrong = status_[v] == kLower ? d_[v] < -tol_ : d_[v] > tol_;
      if (!wrong) continue;
      double target = status_[v] == kLower ? hi_[v] : lo_[v];
      if (std::abs(target) >= kInf) continue;
      double delta = target - x_[v];
      x_[v] = target;
      status_[v] = status_[v] == kLower ? kUpper : kLower;
      for_column(v, [&](int r, double a) { shift[r] += a * delta; });
      flipped = true;
    }
    if (!flipped) return true;
    Eigen::VectorXd change = binv_ * shift;
    for (int p = 0; p < m_; ++p) x_[head_[p]] -= change[p];
    return choose_leaving(false) < 0;
  }

  // Basic logicals cover their own rows, so only the block of basic
  // structurals on the uncovered rows needs an LU inverse.
  void refactor() {
    since_refactor_ = 0;
    if (m_ == 0) return;
    std::vector<int> structural, covered(m_, -1);
    for (int k = 0; k < m_; ++k) {
      if (head_[k] < n_)
        structural.push_back(k);
      else
        covered[head_[k] - n_] = k;
    }
    std::vector<int> free_rows, free_index(m_, -1);
    for (int r = 0; r < m_; ++r)
      if (covered[r] < 0) {
        free_index[r] = static_cast<int>(free_rows.size());
        free_rows.push_back(r);
      }
    int k = static_cast<int>(structural.size());
    bool singular = static_cast<int>(free_rows.size()) != k;
    Eigen::MatrixXd b11_inv;
    if (!singular && k > 0) {
      Eigen::MatrixXd b11 = Eigen::MatrixXd::Zero(k, k);
      for (int c = 0; c < k; ++c)
        for (const auto& [r, a] : cols_[head_[structural[c]]])
          if (free_index[r] >= 0) b11(free_index[r], c) = a;
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(b11);
      double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
      singular = !(min_pivot > 1e-11);
      if (!singular) b11_inv = lu.inverse();
    }
    if (singular) {
      reset_to_slack_basis();
    } else {
      binv_.setZero(m_, m_);
      for (int c = 0; c < k; ++c)
        for (int f = 0; f < k; ++f) binv_(structural[c], free_rows[f]) = b11_inv(c, f);
      // Logical of covered row r: its inverse row is (B21 B11^-1) on free rows and -1 at r.
      for (int c = 0; c < k; ++c) {
        for (const auto& [r, a] : cols_[head_[structural[c]]]) {
          if (covered[r] < 0) continue;
          int p = covered[r];
          for (int f = 0; f < k; ++f) binv_(p, free_rows[f]) += a * b11_inv(c, f);
        }
      }
      for (int r = 0; r < m_; ++r)
        if (covered[r] >= 0) binv_(covered[r], r) = -1;
    }
    recompute_primal();
    recompute_duals();
    weights_ = binv_.rowwise().squaredNorm();
  }

  void reset_to_slack_basis() {
    for (int k = 0; k < m_; ++k) {
      int v = head_[k];
      if (v < n_) {
        pos_[v] = -1;
        status_[v] = kLower;
      }
    }
    for (int r = 0; r < m_; ++r) {
      int v = n_ + r;
      head_[r] = v;
      pos_[v] = r;
      status_[v] = kBasic;
    }
    binv_ = -Eigen::MatrixXd::Identity(m_, m_);
    recompute_duals();
    for (int j = 0; j < n_; ++j) place_nonbasic(j);
  }

  void recompute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int v = 0; v < n_ + m_; ++v) {
      if (status_[v] == kBasic || x_[v] == 0) continue;
      double xv = x_[v];
      for_column(v, [&](int r, double a) { rhs[r] += a * xv; });
    }
    Eigen::VectorXd xb = -(binv_ * rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = xb[p];
  }

  void recompute_duals() {
    Eigen::VectorXd cb(m_);
    for (int p = 0; p < m_; ++p) cb[p] = head_[p] < n_ ? cost_[head_[p]] : 0.0;
    Eigen::VectorXd y = binv_.transpose() * cb;
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == kBasic) {
        d_[j] = 0;
        continue;
      }
      double s = cost_[j];
      for (const auto& [r, a] : cols_[j]) s -= y[r] * a;
      d_[j] = s;
    }
    for (int r = 0; r < m_; ++r) {
      int v = n_ + r;
      d_[v] = status_[v] == kBasic ? 0.0 : y[r];
    }
  }

  static constexpr double kPivotTol = 1e-9;

  const MilpModel& model_;
  int n_;
  int m_ = 0;
  double tol_;
  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<int> row_model_;
  std::vector<bool> active_;
  std::vector<double> cost_, delta_;
  std::vector<double> lo_, hi_, x_, d_;
  std::vector<Status> status_;
  std::vector<int> head_, pos_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd weights_;
  Eigen::RowVectorXd rho_;
  std::vector<double> alpha_;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

std::vector<int> violated_rows(const MilpModel& model, const DualSimplex& lp, double tol) {
  std::vector<std::pair<double, int>> found;
  const auto& x = lp.values();
  for (int i = 0; i < static_cast<int>(model.rows.size()); ++i) {
    if (lp.is_active(i)) continue;
    const MilpRow& row = model.rows[i];
    double act = 0;
    for (const auto& [j, a] : row.terms) act += a * x[j];
    double viol = 0;
    if (row.sense != RowSense::kGe) viol = std::max(viol, act - row.rhs);
    if (row.sense != RowSense::kLe) viol = std::max(viol, row.rhs - act);
    if (viol > tol * (1 + std::abs(row.rhs))) found.emplace_back(-viol, i);
  }
  std::sort(found.begin(), found.end());
  std::vector<int> out;
  for (const auto& [v, i] : found) out.push_back(i);
  return out;
}

enum class NodeResult { kOptimal, kInfeasible, kLimit };

NodeResult solve_node(const MilpModel& model, DualSimplex& lp, const std::vector<double>& lo,
                      const std::vector<double>& hi, double tol) {
  lp.set_bounds(lo, hi);
  while (true) {
    auto r = lp.run(200000);
    if (r == DualSimplex::Result::kInfeasible) return NodeResult::kInfeasible;
    if (r == DualSimplex::Result::kIterationLimit) return NodeResult::kLimit;
    auto add = violated_rows(model, lp, tol);
    if (add.empty()) return NodeResult::kOptimal;
    lp.add_rows(add);
  }
}

struct Node {
  std::vector<double> lo, hi;
  int depth = 0;
  double bound = 0;
  long seq = 0;
  long parent = -1;
  std::shared_ptr<const DualSimplex::Basis> basis;  // optimal basis of the parent
};

MilpSolution run(const MilpModel& model, const SolverConfig& config, bool relax_only) {
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  MilpSolution out;
  int n = static_cast<int>(model.variables.size());
  Node root;
  root.lo.resize(n);
  root.hi.resize(n);
  for (int j = 0; j < n; ++j) {
    root.lo[j] = model.variables[j].lower;
    root.hi[j] = model.variables[j].upper;
  }
  double tol = config.feasibility_tolerance;
  auto finish = [&](SolveStatus s) {
    out.status = s;
    out.seconds = elapsed();
    return out;
  };
  if (!relax_only && !propagate(model, root.lo, root.hi)) return finish(SolveStatus::kInfeasible);

  DualSimplex lp(model, tol, relax_only ? 0.0 : 0.05 * model.objective_granularity);
  std::vector<int> equalities;
  for (int i = 0; i < static_cast<int>(model.rows.size()); ++i)
    if (model.rows[i].sense == RowSense::kEq) equalities.push_back(i);
  lp.add_rows(equalities);

  double incumbent = kInf;
  auto cutoff = [&] {
    if (!out.has_incumbent) return kInf;
    if (model.objective_granularity > 0) return incumbent - model.objective_granularity + 1e-6;
    return incumbent - 1e-9 * (1 + std::abs(incumbent));
  };

  std::vector<Node> open;
  open.push_back(std::move(root));
  long seq = 1;
  long last_solved = 0;
  bool limited = false;
  SolveStatus limit_status = SolveStatus::kNodeLimit;
  while (!open.empty()) {
    if (out.nodes >= config.max_nodes) {
      limited = true;
      limit_status = SolveStatus::kNodeLimit;
      break;
    }
    if (elapsed() > config.max_seconds) {
      limited = true;
      limit_status = SolveStatus::kTimeLimit;
      break;
    }
    auto best = std::min_element(open.begin(), open.end(), [](const Node& a, const Node& b) {
      if (a.depth != b.depth) return a.depth > b.depth;
      if (a.bound != b.bound) return a.bound < b.bound;
      return a.seq < b.seq;
    });
    Node node = std::move(*best);
    open.erase(best);
    if (node.depth > 0 && node.bound >= cutoff()) continue;

    ++out.nodes;
    long before = lp.iterations();
    if (node.basis && node.parent != last_solved) lp.restore(*node.basis);
    last_solved = node.seq;
    NodeResult res = solve_node(model, lp, node.lo, node.hi, tol);
    out.lp_iterations = lp.iterations();
    if (config.log)
      std::fprintf(stderr, "node %ld depth %d rows %d iters %ld result %d obj %.6g t %.2f\n", out.nodes, node.depth,
                   lp.num_rows(), lp.iterations() - before, static_cast<int>(res),
                   res == NodeResult::kOptimal ? lp.objective() : 0.0, elapsed());
    if (res == NodeResult::kLimit) {
      limited = true;
      limit_status = SolveStatus::kNodeLimit;
      break;
    }
    if (res == NodeResult::kInfeasible) continue;
    double z = lp.bound();
    if (node.depth == 0) out.root_bound = z + model.objective_offset;
    if (relax_only) {
      out.has_incumbent = true;
      out.values = lp.values();
      out.objective = z + model.objective_offset;
      return finish(SolveStatus::kOptimal);
    }
    if (z >= cutoff()) continue;

    const auto& x = lp.values();
    int branch = -1;
    double best_frac = -1;
    int best_priority = std::numeric_limits<int>::max();
    for (int j = 0; j < n; ++j) {
      if (model.variables[j].kind != VarKind::kBinary) continue;
      double f = x[j] - std::floor(x[j]);
      if (f <= config.integer_tolerance || f >= 1 - config.integer_tolerance) continue;
      int pr = model.variables[j].priority;
      double closeness = std::min(f, 1 - f);
      if (pr < best_priority || (pr == best_priority && closeness > best_frac + 1e-12)) {
        best_priority = pr;
        best_frac = closeness;
        branch = j;
      }
    }
    if (branch < 0) {
      std::vector<double> sol(x.begin(), x.begin() + n);
      for (int j = 0; j < n; ++j)
        if (model.variables[j].kind == VarKind::kBinary) sol[j] = std::round(sol[j]);
      out.has_incumbent = true;
      out.values = std::move(sol);
      incumbent = lp.objective();
      out.objective = incumbent + model.objective_offset;
      continue;
    }
    double f = x[branch];
    // Siblings tie on depth and bound, so the lower sequence number goes first.
    double first = f >= 0.5 ? 1.0 : 0.0;
    auto basis = lp.snapshot();
    for (double value : {first, 1.0 - first}) {
      Node child;
      child.lo = node.lo;
      child.hi = node.hi;
      child.lo[branch] = child.hi[branch] = value;
      if (!propagate(model, child.lo, child.hi)) continue;
      child.depth = node.depth + 1;
      child.bound = z;
      child.seq = seq++;
      child.parent = node.seq;
      child.basis = basis;
      open.push_back(std::move(child));
    }
  }
  out.seconds = elapsed();
  if (limited) {
    out.status = limit_status;
    return out;
  }
  out.status = out.has_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_terms(std::ostringstream& os, const MilpModel& model, const std::vector<std::pair<int, double>>& terms) {
  int count = 0;
  for (const auto& [j, a] : terms) {
    if (count > 0 && count % 6 == 0) os << "\n  ";
    os << (a < 0 ? " - " : " + ") << format_number(std::abs(a)) << ' ' << model.variables[j].name;
    ++count;
  }
  if (terms.empty()) os << " 0";
}

}  // namespace

MilpSolution solve(const MilpModel& model, const SolverConfig& config) { return run(model, config, false); }

MilpSolution solve_relaxation(const MilpModel& model, const SolverConfig& config) {
  return run(model, config, true);
}

std::string export_lp(const MilpModel& model) {
  std::ostringstream os;
  os << "\\ crnt MILP\n";
  if (model.variables.empty()) return os.str();
  os << "Minimize\n obj:";
  std::vector<std::pair<int, double>> obj;
  for (std::size_t j = 0; j < model.objective.size(); ++j)
    if (model.objective[j] != 0) obj.emplace_back(static_cast<int>(j), model.objective[j]);
  write_terms(os, model, obj);
  os << "\nSubject To\n";
  for (const auto& row : model.rows) {
    os << ' ' << row.name << ':';
    write_terms(os, model, row.terms);
    os << (row.sense == RowSense::kLe ? " <= " : row.sense == RowSense::kGe ? " >= " : " = ")
       << format_number(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.lower == v.upper)
      os << ' ' << v.name << " = " << format_number(v.lower) << '\n';
    else if (!(v.kind == VarKind::kBinary && v.lower == 0 && v.upper == 1))
      os << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << '\n';
  }
  bool any_binary = false;
  for (const auto& v : model.variables) {
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) os << "Binaries\n";
    any_binary = true;
    os << ' ' << v.name << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace crnt
