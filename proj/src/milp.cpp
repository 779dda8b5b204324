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

#include "crnt/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "crnt/graph.hpp"
#include "crnt/linalg.hpp"
#include "crnt/verify.hpp"

namespace crnt {

std::string var_name(const std::string& symbol, int a) { return symbol + "_" + std::to_string(a); }

std::string var_name(const std::string& symbol, int a, int b) {
  return symbol + "_" + std::to_string(a) + "_" + std::to_string(b);
}

namespace {

using Terms = std::vector<std::pair<int, double>>;

// Branching order: image map, edge support, star sets, pair indicators, partitions.
constexpr int kPriorityH = 0;
constexpr int kPriorityEdge = 1;
constexpr int kPriorityStar = 2;
constexpr int kPriorityPair = 3;
constexpr int kPriorityClass = 4;

// Bound-tightening facts shared by the builders.
struct Presolve {
  std::vector<int> group;                // conservation class of each candidate
  std::vector<std::vector<bool>> image;  // H[i,a] may be 1
  std::vector<std::vector<bool>> lam;    // lambda[i,a] may be nonzero

  bool edge(int a, int b) const { return a != b && group[a] == group[b]; }
};

// A translated edge (a,b) satisfies W (y~_b - y~_a) = 0: for a weakly
// reversible translation every edge vector lies in the span of the net flux
// vectors, which lie in S. h(i) = a is possible only if the flux of i
// decomposes nonnegatively over edges leaving a.
Presolve presolve(const MilpParameters& p) {
  Presolve pre;
  std::map<RatVector, int> ids;
  pre.group.resize(p.m_tilde);
  for (int a = 0; a < p.m_tilde; ++a) {
    RatVector key;
    for (const auto& w : p.conservation) {
      Rational s = 0;
      for (int k = 0; k < p.n; ++k) s += w[k] * p.Y_tilde[a][k];
      key.push_back(s);
    }
    pre.group[a] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
  }
  pre.image.assign(p.q, std::vector<bool>(p.m_tilde, false));
  pre.lam.assign(p.q, std::vector<bool>(p.m_tilde, false));
  for (int i = 0; i < p.q; ++i) {
    RatVector target(p.M[i].begin(), p.M[i].end());
    for (int a = 0; a < p.m_tilde; ++a) {
      std::vector<RatVector> cols;
      for (int b = 0; b < p.m_tilde; ++b) {
        if (!pre.edge(a, b)) continue;
        RatVector d(p.n);
        for (int k = 0; k < p.n; ++k) d[k] = p.Y_tilde[b][k] - p.Y_tilde[a][k];
        cols.push_back(std::move(d));
      }
      if (cols.empty()) {
        pre.image[i][a] = is_zero(target);
        continue;
      }
      pre.image[i][a] = nonnegative_solution(RatMatrix::from_columns(cols, p.n), target).has_value();
    }
    for (int a = 0; a < p.m_tilde; ++a) {
      if (!pre.image[i][a]) continue;
      pre.lam[i][a] = true;
      for (int b = 0; b < p.m_tilde; ++b)
        if (pre.edge(a, b)) pre.lam[i][b] = true;
    }
  }
  return pre;
}

int v(const MilpModel& m, const std::string& sym, int a, int b) { return m.at(var_name(sym, a + 1, b + 1)); }
int v(const MilpModel& m, const std::string& sym, int a) { return m.at(var_name(sym, a + 1)); }

void fix_zero(MilpModel& m, int id) { m.variables[id].lower = m.variables[id].upper = 0; }

}  // namespace

MilpParameters init_parameters(const ReactionNetwork& net, const std::vector<Complex>& candidates, double epsilon,
                               int ell_star, std::uint64_t seed) {
  if (candidates.empty()) throw MilpError("empty candidate set");
  if (!(epsilon > 0 && epsilon < 1)) throw MilpError("epsilon must lie in (0, 1)");
  if (ell_star < 1) throw MilpError("ell_star must be positive");
  MilpParameters p;
  p.n = net.num_species();
  p.epsilon = epsilon;
  p.ell_star = ell_star;
  p.seed = seed;
  p.relevant = kinetically_relevant(net);
  p.q = static_cast<int>(p.relevant.size());
  p.m_tilde = static_cast<int>(candidates.size());
  p.s = stoichiometric_subspace_dim(net);
  p.candidates = candidates;
  p.conservation = conservation_basis(net);
  const std::vector<RatVector> flux = net_flux_vectors(net);
  for (int i : p.relevant) {
    p.Y.push_back(net.complexes[i].dense(p.n));
    p.M.push_back(flux[i]);
  }
  for (const Complex& c : candidates) {
    for (const auto& [sp, coeff] : c.coefficients())
      if (sp < 0 || sp >= p.n) throw MilpError("candidate uses an unknown species");
    p.Y_tilde.push_back(c.dense(p.n));
  }
  Rng rng(seed);
  const double lo = std::sqrt(epsilon), hi = 1 / std::sqrt(epsilon);
  p.V.assign(p.q, std::vector<double>(p.q, 0.0));
  for (int i = 0; i < p.q; ++i)
    for (int j = i + 1; j < p.q; ++j) p.V[i][j] = rng.uniform(lo, hi);
  return p;
}

void declare_variables(MilpModel& m, const MilpParameters& p) {
  const Presolve pre = presolve(p);
  const double big = p.big_m();
  const int q = p.q, mt = p.m_tilde, classes = p.num_classes();
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < mt; ++a) {
      int h = m.add_variable(var_name("H", i + 1, a + 1), VarKind::kBinary, 0, 1, kPriorityH);
      if (!pre.image[i][a]) fix_zero(m, h);
    }
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < mt; ++a) {
      int l = m.add_variable(var_name("lambda", i + 1, a + 1), VarKind::kContinuous, -big, big);
      if (!pre.lam[i][a]) fix_zero(m, l);
      else if (!pre.image[i][a]) m.variables[l].lower = 0;
    }
  struct EdgeFamily {
    const char* symbol;
    VarKind kind;
    double upper;
    int priority;
  };
  const EdgeFamily families[] = {
      {"w", VarKind::kContinuous, big * big, 0},   {"b", VarKind::kContinuous, big, 0},
      {"bs", VarKind::kContinuous, big, 0},        {"bss", VarKind::kContinuous, big, 0},
      {"e", VarKind::kBinary, 1, kPriorityEdge},   {"es", VarKind::kBinary, 1, kPriorityStar},
      {"ess", VarKind::kBinary, 1, kPriorityStar},
  };
  for (const auto& f : families)
    for (int a = 0; a < mt; ++a)
      for (int b = 0; b < mt; ++b) {
        if (a == b) continue;
        int id = m.add_variable(var_name(f.symbol, a + 1, b + 1), f.kind, 0, f.upper, f.priority);
        if (!pre.edge(a, b)) fix_zero(m, id);
      }
  for (int a = 0; a < mt; ++a) m.add_variable(var_name("Cs", a + 1), VarKind::kBinary, 0, 1, kPriorityStar);
  for (int a = 0; a < mt; ++a) m.add_variable(var_name("Css", a + 1), VarKind::kBinary, 0, 1, kPriorityStar);
  for (const char* sym : {"dI", "dK"})
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j) {
        int id = m.add_variable(var_name(sym, i + 1, j + 1), VarKind::kBinary, 0, 1, kPriorityPair);
        if (std::string(sym) == "dI") {
          bool shared = false;
          for (int a = 0; a < mt; ++a) shared = shared || (pre.image[i][a] && pre.image[j][a]);
          if (!shared) fix_zero(m, id);
        }
      }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (i != j) m.add_variable(var_name("c", i + 1, j + 1), VarKind::kContinuous, 0, big);
  for (int a = 0; a < mt; ++a)
    for (int t = 0; t < classes; ++t) m.add_variable(var_name("g", a + 1, t + 1), VarKind::kBinary, 0, 1, kPriorityClass);
  for (int i = 0; i < q; ++i)
    for (int t = 0; t < classes; ++t)
      m.add_variable(var_name("gK", i + 1, t + 1), VarKind::kBinary, 0, 1, kPriorityClass);
  for (int a = 0; a < mt; ++a)
    for (int t = 0; t < p.ell_star; ++t)
      m.add_variable(var_name("gs", a + 1, t + 1), VarKind::kBinary, 0, 1, kPriorityPair);
  for (int t = 0; t < classes; ++t) m.add_variable(var_name("L", t + 1), VarKind::kContinuous, 0, 1);
  for (int t = 0; t < p.ell_star; ++t) m.add_variable(var_name("Ls", t + 1), VarKind::kBinary, 0, 1, kPriorityPair);
}

void add_translation_core(MilpModel& m, const MilpParameters& p) {
  const int q = p.q, mt = p.m_tilde;
  for (int a = 0; a < mt; ++a)
    for (int k = 0; k < p.n; ++k) {
      Terms t;
      for (int b = 0; b < mt; ++b) {
        if (b == a) continue;
        double d = p.Y_tilde[b][k] - p.Y_tilde[a][k];
        if (d != 0) t.emplace_back(v(m, "b", a, b), d);
      }
      for (int i = 0; i < q; ++i) {
        double flux = to_double(p.M[i][k]);
        if (flux != 0) t.emplace_back(v(m, "H", i, a), -flux);
      }
      m.add_row(var_name("Trl1_f", a + 1, k + 1), std::move(t), RowSense::kEq, 0);
    }
  for (int i = 0; i < q; ++i) {
    Terms t;
    for (int a = 0; a < mt; ++a) t.emplace_back(v(m, "H", i, a), 1);
    m.add_row(var_name("Trl1_h", i + 1), std::move(t), RowSense::kEq, 1);
  }
  // Only images of h carry outgoing edges (h_K is defined on them).
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      Terms t{{v(m, "e", a, b), 1}};
      for (int i = 0; i < q; ++i) t.emplace_back(v(m, "H", i, a), -1);
      m.add_row(var_name("Trl1_e", a + 1, b + 1), std::move(t), RowSense::kLe, 0);
    }
  // Edge-support indicators: eps e <= b <= e / eps.
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      int e = v(m, "e", a, b), w = v(m, "b", a, b);
      m.add_row(var_name("Sup_l", a + 1, b + 1), {{e, p.epsilon}, {w, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Sup_u", a + 1, b + 1), {{w, 1}, {e, -p.big_m()}}, RowSense::kLe, 0);
    }
}

void add_proper_restriction(MilpModel& m, const MilpParameters& p) {
  for (int a = 0; a < p.m_tilde; ++a) {
    Terms t;
    for (int i = 0; i < p.q; ++i) t.emplace_back(v(m, "H", i, a), 1);
    m.add_row(var_name("Trl2", a + 1), std::move(t), RowSense::kLe, 1);
  }
}

void add_improper_flux(MilpModel& m, const MilpParameters& p) {
  const int q = p.q, mt = p.m_tilde;
  const double big = p.big_m();
  const Presolve pre = presolve(p);
  for (int i = 0; i < q; ++i) {
    for (int a = 0; a < mt; ++a) {
      int l = v(m, "lambda", i, a), h = v(m, "H", i, a);
      m.add_row(var_name("Trl3_u", i + 1, a + 1), {{l, 1}, {h, big}}, RowSense::kLe, big);
      m.add_row(var_name("Trl3_l", i + 1, a + 1), {{l, -1}, {h, -big}}, RowSense::kLe, 0);
    }
    Terms sum;
    for (int a = 0; a < mt; ++a) sum.emplace_back(v(m, "lambda", i, a), 1);
    m.add_row(var_name("Trl3_s", i + 1), std::move(sum), RowSense::kEq, 0);
    for (int k = 0; k < p.n; ++k) {
      Terms t;
      for (int a = 0; a < mt; ++a)
        if (p.Y_tilde[a][k] != 0) t.emplace_back(v(m, "lambda", i, a), p.Y_tilde[a][k]);
      m.add_row(var_name("Trl3_y", i + 1, k + 1), std::move(t), RowSense::kEq, to_double(p.M[i][k]));
    }
    // Property 1(a): positive lambda[i,b] needs the edge (h(i), b); the
    // decomposition stays inside one conservation class.
    std::set<int> groups(pre.group.begin(), pre.group.end());
    for (int g : groups) {
      Terms t;
      for (int a = 0; a < mt; ++a)
        if (pre.group[a] == g) t.emplace_back(v(m, "lambda", i, a), 1);
      m.add_row(var_name("Trl3_g", i + 1, g + 1), std::move(t), RowSense::kEq, 0);
    }
    for (int a = 0; a < mt; ++a) {
      if (!pre.image[i][a]) continue;
      for (int b = 0; b < mt; ++b) {
        if (b == a || !pre.lam[i][b]) continue;
        m.add_row("Trl3_e_" + std::to_string(i + 1) + "_" + std::to_string(a + 1) + "_" + std::to_string(b + 1),
                  {{v(m, "lambda", i, b), 1}, {v(m, "H", i, a), big}, {v(m, "e", a, b), -big}}, RowSense::kLe, big);
      }
    }
  }
}

void add_weak_reversibility(MilpModel& m, const MilpParameters& p) {
  const int mt = p.m_tilde;
  for (int a = 0; a < mt; ++a) {
    Terms t;
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      t.emplace_back(v(m, "w", a, b), 1);
      t.emplace_back(v(m, "w", b, a), -1);
    }
    m.add_row(var_name("WR_b", a + 1), std::move(t), RowSense::kEq, 0);
  }
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      int w = v(m, "w", a, b), bt = v(m, "b", a, b);
      m.add_row(var_name("WR_l", a + 1, b + 1), {{w, -1}, {bt, p.epsilon}}, RowSense::kLe, 0);
      m.add_row(var_name("WR_u", a + 1, b + 1), {{w, 1}, {bt, -p.big_m()}}, RowSense::kLe, 0);
    }
}

void add_deficiency_partition(MilpModel& m, const MilpParameters& p) {
  const int mt = p.m_tilde, classes = p.num_classes();
  for (int a = 0; a < mt; ++a) {
    Terms t;
    for (int c = 0; c < classes; ++c) t.emplace_back(v(m, "g", a, c), 1);
    m.add_row(var_name("Def_a", a + 1), std::move(t), RowSense::kEq, 1);
  }
  // Nonempty-class indicators; the capacity uses max(1/eps, m~) so a class may
  // hold every candidate.
  const double capacity = std::max(p.big_m(), static_cast<double>(mt));
  for (int c = 0; c < classes; ++c) {
    Terms upper, lower;
    for (int a = 0; a < mt; ++a) {
      upper.emplace_back(v(m, "g", a, c), 1);
      lower.emplace_back(v(m, "g", a, c), -1);
    }
    upper.emplace_back(v(m, "L", c), -capacity);
    lower.emplace_back(v(m, "L", c), 1);
    m.add_row(var_name("Def_u", c + 1), std::move(upper), RowSense::kLe, 0);
    m.add_row(var_name("Def_l", c + 1), std::move(lower), RowSense::kLe, 0);
  }
  // An edge forces equal classes: e[a,b] + g[a,c] - g[b,c] <= 1 for every c.
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      for (int c = 0; c < classes; ++c)
        m.add_row("Def_x_" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + "_" + std::to_string(c + 1),
                  {{v(m, "e", a, b), 1}, {v(m, "g", a, c), 1}, {v(m, "g", b, c), -1}}, RowSense::kLe, 1);
    }
  // Class c + 1 opens only after class c is used by an earlier candidate.
  for (int a = 0; a < mt; ++a)
    for (int c = 0; c < classes && c <= a; ++c) {
      Terms t;
      for (int l = c + 1; l < classes; ++l) t.emplace_back(v(m, "g", a, l), 1);
      for (int b = 0; b < a; ++b) t.emplace_back(v(m, "g", b, c), -1);
      if (t.empty()) continue;
      m.add_row(var_name("Def_s", a + 1, c + 1), std::move(t), RowSense::kLe, 0);
    }
}

void add_resolvability(MilpModel& m, const MilpParameters& p) {
  const int q = p.q, mt = p.m_tilde, classes = p.num_classes();
  const double big = p.big_m(), eps = p.epsilon;
  const Presolve pre = presolve(p);
  auto name3 = [](const char* s, int a, int b, int c) {
    return std::string(s) + "_" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + "_" + std::to_string(c + 1);
  };
  // (Rsl1) delta_I[i,j] = 1 iff h(i) = h(j).
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      int di = v(m, "dI", i, j);
      for (int a = 0; a < mt; ++a) {
        int hi = v(m, "H", i, a), hj = v(m, "H", j, a);
        m.add_row(name3("Rsl1_a", i, j, a), {{hi, 1}, {hj, 1}, {di, -1}}, RowSense::kLe, 1);
        m.add_row(name3("Rsl1_b", i, j, a), {{di, 1}, {hi, 1}, {hj, -1}}, RowSense::kLe, 1);
        m.add_row(name3("Rsl1_c", i, j, a), {{di, 1}, {hj, 1}, {hi, -1}}, RowSense::kLe, 1);
      }
      int dk = v(m, "dK", i, j), cij = v(m, "c", i, j), cji = v(m, "c", j, i);
      m.add_row(var_name("Rsl1_d", i + 1, j + 1), {{dk, 1}, {cij, -big}, {cji, -big}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl1_e", i + 1, j + 1), {{cij, eps}, {cji, eps}, {dk, -1}}, RowSense::kLe, 0);
    }
  // gamma_K[i,.] copies gamma[h(i),.].
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < mt; ++a) {
      if (!pre.image[i][a]) continue;
      int h = v(m, "H", i, a);
      for (int c = 0; c < classes; ++c) {
        int g = v(m, "g", a, c), gk = v(m, "gK", i, c);
        m.add_row(name3("Rsl1_f", i, a, c), {{g, 1}, {gk, -1}, {h, 1}}, RowSense::kLe, 1);
        m.add_row(name3("Rsl1_g", i, a, c), {{gk, 1}, {g, -1}, {h, 1}}, RowSense::kLe, 1);
      }
    }
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int c = 0; c < classes; ++c)
        m.add_row(name3("Rsl1_h", i, j, c), {{v(m, "dK", i, j), 1}, {v(m, "gK", j, c), 1}, {v(m, "gK", i, c), -1}},
                  RowSense::kLe, 1);
  for (int k = 0; k < p.n; ++k) {
    Terms t;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        if (i == j) continue;
        double d = p.Y[i][k] - p.Y[j][k];
        if (d == 0) continue;
        if (i < j) t.emplace_back(v(m, "dI", i, j), p.V[i][j] * d);
        t.emplace_back(v(m, "c", i, j), -d);
      }
    m.add_row(var_name("Rsl1_r", k + 1), std::move(t), RowSense::kEq, 0);
  }

  // (Rsl2) improper complexes lie in C*, resolving complexes do not, and R*
  // holds exactly the edges leaving C*.
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int a = 0; a < mt; ++a) {
        if (!pre.image[i][a] && !pre.image[j][a]) continue;
        int hi = v(m, "H", i, a), hj = v(m, "H", j, a), cs = v(m, "Cs", a), dk = v(m, "dK", i, j);
        if (pre.image[i][a] && pre.image[j][a])
          m.add_row(name3("Rsl2_a", i, j, a), {{hi, 1}, {hj, 1}, {cs, -1}}, RowSense::kLe, 1);
        if (pre.image[i][a]) m.add_row(name3("Rsl2_b", i, j, a), {{dk, 1}, {hi, 1}, {cs, 1}}, RowSense::kLe, 2);
        if (pre.image[j][a]) m.add_row(name3("Rsl2_c", i, j, a), {{dk, 1}, {hj, 1}, {cs, 1}}, RowSense::kLe, 2);
      }
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      int e = v(m, "e", a, b), es = v(m, "es", a, b), ess = v(m, "ess", a, b);
      int bs = v(m, "bs", a, b), bss = v(m, "bss", a, b);
      int csa = v(m, "Cs", a), csb = v(m, "Cs", b), cssa = v(m, "Css", a), cssb = v(m, "Css", b);
      m.add_row(var_name("Rsl2_s1", a + 1, b + 1), {{es, 1}, {e, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl2_s2", a + 1, b + 1), {{es, 1}, {csa, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl2_s3", a + 1, b + 1), {{e, 1}, {csa, 1}, {es, -1}}, RowSense::kLe, 1);
      m.add_row(var_name("Rsl2_t", a + 1, b + 1), {{es, 1}, {csb, -1}, {cssb, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl2_l", a + 1, b + 1), {{es, eps}, {bs, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl2_u", a + 1, b + 1), {{bs, 1}, {es, -big}}, RowSense::kLe, 0);
      // (Rsl3) R** runs from C** into C*.
      m.add_row(var_name("Rsl3_s1", a + 1, b + 1), {{ess, 1}, {cssa, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl3_s2", a + 1, b + 1), {{ess, 1}, {csb, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl3_l", a + 1, b + 1), {{ess, eps}, {bss, -1}}, RowSense::kLe, 0);
      m.add_row(var_name("Rsl3_u", a + 1, b + 1), {{bss, 1}, {ess, -big}}, RowSense::kLe, 0);
    }

  // (Rsl3) disjointness, auxiliary classes, |C**| = number of classes, and
  // weak reversibility of the auxiliary network.
  for (int a = 0; a < mt; ++a) {
    m.add_row(var_name("Rsl3_a", a + 1), {{v(m, "Cs", a), 1}, {v(m, "Css", a), 1}}, RowSense::kLe, 1);
    // The star sets live on complexes of the translation, i.e. images of h.
    Terms used{{v(m, "Cs", a), 1}, {v(m, "Css", a), 1}};
    for (int i = 0; i < q; ++i) used.emplace_back(v(m, "H", i, a), -1);
    m.add_row(var_name("Rsl3_i", a + 1), std::move(used), RowSense::kLe, 0);
    Terms t;
    for (int c = 0; c < p.ell_star; ++c) t.emplace_back(v(m, "gs", a, c), 1);
    t.emplace_back(v(m, "Cs", a), -1);
    t.emplace_back(v(m, "Css", a), -1);
    m.add_row(var_name("Rsl3_g", a + 1), std::move(t), RowSense::kEq, 0);
  }
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      for (int c = 0; c < p.ell_star; ++c)
        m.add_row(name3("Rsl3_x", a, b, c),
                  {{v(m, "es", a, b), 1}, {v(m, "ess", a, b), 1}, {v(m, "gs", a, c), 1}, {v(m, "gs", b, c), -1}},
                  RowSense::kLe, 1);
    }
  const double capacity = std::max(big, static_cast<double>(mt));
  for (int c = 0; c < p.ell_star; ++c) {
    Terms upper, lower;
    for (int a = 0; a < mt; ++a) {
      upper.emplace_back(v(m, "gs", a, c), 1);
      lower.emplace_back(v(m, "gs", a, c), -1);
    }
    upper.emplace_back(v(m, "Ls", c), -capacity);
    lower.emplace_back(v(m, "Ls", c), 1);
    m.add_row(var_name("Rsl3_cu", c + 1), std::move(upper), RowSense::kLe, 0);
    m.add_row(var_name("Rsl3_cl", c + 1), std::move(lower), RowSense::kLe, 0);
  }
  {
    Terms t;
    for (int a = 0; a < mt; ++a) t.emplace_back(v(m, "Css", a), 1);
    for (int c = 0; c < p.ell_star; ++c) t.emplace_back(v(m, "Ls", c), -1);
    m.add_row("Rsl3_n", std::move(t), RowSense::kEq, 0);
  }
  for (int a = 0; a < mt; ++a) {
    Terms t;
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      t.emplace_back(v(m, "bs", a, b), 1);
      t.emplace_back(v(m, "bss", a, b), 1);
      t.emplace_back(v(m, "bs", b, a), -1);
      t.emplace_back(v(m, "bss", b, a), -1);
    }
    m.add_row(var_name("Rsl3_b", a + 1), std::move(t), RowSense::kEq, 0);
  }
  for (int a = 0; a < mt; ++a)
    for (int c = 0; c < p.ell_star && c <= a; ++c) {
      Terms t;
      for (int l = c + 1; l < p.ell_star; ++l) t.emplace_back(v(m, "gs", a, l), 1);
      for (int b = 0; b < a; ++b) t.emplace_back(v(m, "gs", b, c), -1);
      if (t.empty()) continue;
      m.add_row(var_name("Rsl3_o", a + 1, c + 1), std::move(t), RowSense::kLe, 0);
    }
}

void set_objective(MilpModel& m, const MilpParameters& p, ObjectiveMode mode) {
  Terms t;
  if (mode == ObjectiveMode::kMinComponents) {
    for (int a = 0; a < p.m_tilde; ++a) {
      t.emplace_back(v(m, "Cs", a), p.epsilon);
      t.emplace_back(v(m, "Css", a), p.epsilon);
    }
    m.set_objective(t, p.epsilon);
    return;
  }
  for (int c = 0; c < p.num_classes(); ++c) t.emplace_back(v(m, "L", c), -1);
  m.set_objective(t, 1);
}

MilpModel build_model(const MilpParameters& p, bool proper_only) {
  MilpModel m;
  declare_variables(m, p);
  add_translation_core(m, p);
  if (proper_only) add_proper_restriction(m, p);
  add_improper_flux(m, p);
  add_weak_reversibility(m, p);
  add_deficiency_partition(m, p);
  add_resolvability(m, p);
  set_objective(m, p, ObjectiveMode::kLexicographic);
  return m;
}

namespace {

bool on(const MilpSolution& sol, const MilpModel& m, const std::string& name) {
  return sol.values[m.at(name)] > 0.5;
}

// Exact lambda for fixed h and edge support: every edge carries at least tau.
std::optional<std::map<std::pair<int, int>, Rational>> exact_lambda(const MilpParameters& p,
                                                                    const std::vector<int>& h,
                                                                    const std::vector<Edge>& edges) {
  const Rational tau(1, 1000000);
  std::vector<std::pair<int, int>> vars;  // (i, b)
  for (int i = 0; i < p.q; ++i)
    for (const auto& [a, b] : edges)
      if (a == h[i]) vars.emplace_back(i, b);
  const int nv = static_cast<int>(vars.size()), ne = static_cast<int>(edges.size());
  RatMatrix A(p.q * p.n + ne, nv + ne);
  RatVector rhs(p.q * p.n + ne);
  for (int i = 0; i < p.q; ++i)
    for (int k = 0; k < p.n; ++k) rhs[i * p.n + k] = p.M[i][k];
  for (int col = 0; col < nv; ++col) {
    const auto [i, b] = vars[col];
    for (int k = 0; k < p.n; ++k) A(i * p.n + k, col) = p.Y_tilde[b][k] - p.Y_tilde[h[i]][k];
    for (int e = 0; e < ne; ++e)
      if (edges[e] == Edge{h[i], b}) A(p.q * p.n + e, col) = 1;
  }
  for (int e = 0; e < ne; ++e) {
    A(p.q * p.n + e, nv + e) = -1;
    rhs[p.q * p.n + e] = tau;
  }
  auto x = nonnegative_solution(A, rhs);
  if (!x) return std::nullopt;
  std::map<std::pair<int, int>, Rational> out;
  for (int col = 0; col < nv; ++col)
    if (!is_zero((*x)[col])) out[vars[col]] = (*x)[col];
  return out;
}

// R** as one back edge per k' in C**, from k' to the lowest improper complex
// reaching it through R*.
std::vector<Edge> canonical_back_edges(const ReactionNetwork& trans, const std::vector<int>& C_I,
                                       const TheoremSets& sets) {
  Digraph g(trans.num_complexes(), sets.R_star);
  std::vector<Edge> out;
  for (int k : sets.C_star_star) {
    for (int p : C_I) {
      if (g.reachable(p)[k]) {
        out.emplace_back(k, p);
        break;
      }
    }
  }
  return out;
}

}  // namespace

Extraction extract_solution(const MilpSolution& sol, const MilpModel& m, const MilpParameters& p,
                            const ReactionNetwork& net) {
  Extraction ex;
  const int q = p.q, mt = p.m_tilde;
  std::vector<int> h(q, -1);
  for (int i = 0; i < q; ++i)
    for (int a = 0; a < mt; ++a)
      if (on(sol, m, var_name("H", i + 1, a + 1))) h[i] = a;
  std::vector<Edge> edges;
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b)
      if (a != b && on(sol, m, var_name("e", a + 1, b + 1))) edges.emplace_back(a, b);
  std::set<int> used_set(h.begin(), h.end());
  for (const auto& [a, b] : edges) {
    used_set.insert(a);
    used_set.insert(b);
  }
  ex.used.assign(used_set.begin(), used_set.end());
  std::map<int, int> to_trans;
  for (std::size_t t = 0; t < ex.used.size(); ++t) to_trans[ex.used[t]] = static_cast<int>(t);

  auto lambda = exact_lambda(p, h, edges);
  if (!lambda) {
    ex.problems.push_back("no exact flux decomposition with positive weights on the edge support");
    return ex;
  }
  std::map<Edge, Rational> weight;
  for (const auto& [key, value] : *lambda) weight[{h[key.first], key.second}] += value;

  ReactionNetwork& base = ex.trans.base;
  base.species = net.species;
  for (int a : ex.used) base.complexes.push_back(p.candidates[a]);
  for (const auto& [e, w] : weight) base.reactions.push_back({to_trans[e.first], to_trans[e.second], w});
  std::map<int, std::vector<int>> fiber;
  for (int i = 0; i < q; ++i) fiber[to_trans[h[i]]].push_back(p.relevant[i]);
  for (std::size_t t = 0; t < ex.used.size(); ++t) {
    auto it = fiber.find(static_cast<int>(t));
    if (it == fiber.end()) {
      ex.trans.kinetic.push_back(base.complexes[t]);
    } else {
      int rep = *std::min_element(it->second.begin(), it->second.end());
      ex.trans.kinetic.push_back(net.complexes[rep]);
      ex.cert.h_K[static_cast<int>(t)] = rep;
    }
  }
  for (int i = 0; i < q; ++i) ex.cert.h[p.relevant[i]] = to_trans[h[i]];
  for (const auto& [key, value] : *lambda) ex.cert.lambda[{p.relevant[key.first], to_trans[key.second]}] = value;

  CertificateVerdict verdict = check_certificate(net, ex.trans, ex.cert);
  for (const auto& msg : verdict.violations) ex.problems.push_back("certificate: " + msg);
  if (!is_weakly_reversible(base)) ex.problems.push_back("translation is not weakly reversible");
  if (!ex.problems.empty()) return ex;
  ex.translation_valid = true;

  auto mapped = [&](int a) -> int {
    auto it = to_trans.find(a);
    return it == to_trans.end() ? -1 : it->second;
  };
  TheoremSets& sets = ex.milp_sets;
  for (int a = 0; a < mt; ++a) {
    if (on(sol, m, var_name("Cs", a + 1))) sets.C_star.push_back(mapped(a));
    if (on(sol, m, var_name("Css", a + 1))) sets.C_star_star.push_back(mapped(a));
  }
  for (int a = 0; a < mt; ++a)
    for (int b = 0; b < mt; ++b) {
      if (a == b) continue;
      if (on(sol, m, var_name("es", a + 1, b + 1))) sets.R_star.emplace_back(mapped(a), mapped(b));
      if (on(sol, m, var_name("ess", a + 1, b + 1))) sets.R_star_star.emplace_back(mapped(a), mapped(b));
    }
  auto has_unused = [](const std::vector<int>& xs) { return std::find(xs.begin(), xs.end(), -1) != xs.end(); };
  bool unused = has_unused(sets.C_star) || has_unused(sets.C_star_star);
  for (const auto& [a, b] : sets.R_star) unused = unused || a < 0 || b < 0;
  for (const auto& [a, b] : sets.R_star_star) unused = unused || a < 0 || b < 0;
  if (unused) {
    ex.problems.push_back("star sets use a candidate outside the translation");
    return ex;
  }
  std::sort(sets.R_star.begin(), sets.R_star.end());
  std::sort(sets.R_star_star.begin(), sets.R_star_star.end());

  TheoremSets reported = sets;
  ImproperSets improper = improper_sets(net, ex.trans, ex.cert);
  reported.R_star_star = canonical_back_edges(base, improper.C_I, sets);
  ex.report = analyze_resolvability(net, ex.trans, ex.cert, &reported);
  if (!ex.report.verdict.holds()) ex.report = analyze_resolvability(net, ex.trans, ex.cert, &sets);
  if (!ex.report.proper()) {
    if (!ex.report.resolving) ex.problems.push_back("improper subspace is not resolvable");
    if (!ex.report.verdict.holds()) ex.problems.push_back("star sets fail the Theorem conditions");
  }
  return ex;
}

namespace {

// Excludes the current assignment of the listed binary families.
void add_no_good(MilpModel& m, const MilpSolution& sol, const std::vector<std::string>& families, int serial) {
  Terms t;
  double ones = 0;
  for (std::size_t j = 0; j < m.variables.size(); ++j) {
    const MilpVariable& var = m.variables[j];
    if (var.kind != VarKind::kBinary || var.lower == var.upper) continue;
    std::string family = var.name.substr(0, var.name.find('_'));
    if (std::find(families.begin(), families.end(), family) == families.end()) continue;
    if (sol.values[j] > 0.5) {
      t.emplace_back(static_cast<int>(j), 1);
      ones += 1;
    } else {
      t.emplace_back(static_cast<int>(j), -1);
    }
  }
  m.add_row(var_name("NoGood", serial), std::move(t), RowSense::kLe, ones - 1);
}

}  // namespace

TranslateResult find_translation(const ReactionNetwork& net, const std::vector<Complex>& candidates,
                                 const TranslateOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  TranslateResult res;
  MilpParameters p = init_parameters(net, candidates, opt.epsilon, opt.ell_star, opt.seed);
  MilpModel model = build_model(p, opt.proper_only);
  res.variables = static_cast<int>(model.variables.size());
  res.constraints = static_cast<int>(model.rows.size());

  auto run = [&](const MilpModel& mm, MilpSolution& sol) {
    SolverConfig cfg = opt.solver;
    cfg.max_seconds = std::max(0.0, opt.solver.max_seconds - elapsed());
    cfg.max_nodes = std::max(0L, opt.solver.max_nodes - res.nodes);
    sol = solve(mm, cfg);
    res.nodes += sol.nodes;
    res.lp_iterations += sol.lp_iterations;
    if (sol.status == SolveStatus::kInfeasible) return false;
    if (!sol.has_incumbent) return false;
    if (sol.status != SolveStatus::kOptimal) res.optimal = false;
    return true;
  };

  for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
    res.retries = attempt;
    res.optimal = true;
    MilpSolution sol;
    MilpModel stage = model;
    if (opt.objective != ObjectiveMode::kMinComponents) {
      set_objective(stage, p, ObjectiveMode::kMinDeficiency);
      if (!run(stage, sol)) {
        res.status = sol.status == SolveStatus::kInfeasible ? TranslateStatus::kInfeasible : TranslateStatus::kBudget;
        res.seconds = elapsed();
        return res;
      }
    }
    if (opt.objective != ObjectiveMode::kMinDeficiency) {
      if (opt.objective == ObjectiveMode::kLexicographic) {
        Terms t;
        for (int c = 0; c < p.num_classes(); ++c) t.emplace_back(v(stage, "L", c), 1);
        stage.add_row("Lex", std::move(t), RowSense::kEq, std::round(-sol.objective));
      }
      set_objective(stage, p, ObjectiveMode::kMinComponents);
      MilpSolution second;
      if (!run(stage, second)) {
        res.status =
            second.status == SolveStatus::kInfeasible ? TranslateStatus::kInfeasible : TranslateStatus::kBudget;
        res.seconds = elapsed();
        return res;
      }
      sol = std::move(second);
    }
    double classes = 0, star = 0;
    for (int c = 0; c < p.num_classes(); ++c) classes += sol.values[v(stage, "L", c)];
    for (int a = 0; a < p.m_tilde; ++a) star += sol.values[v(stage, "Cs", a)] + sol.values[v(stage, "Css", a)];
    res.num_classes = static_cast<int>(std::lround(classes));
    res.star_size = static_cast<int>(std::lround(star));
    Extraction ex = extract_solution(sol, stage, p, net);
    if (ex.ok()) {
      res.status = TranslateStatus::kFound;
      res.extraction = std::move(ex);
      res.seconds = elapsed();
      return res;
    }
    res.rejected.push_back(ex.problems.front());
    std::vector<std::string> families = {"H", "e"};
    if (ex.translation_valid) families = {"H", "e", "Cs", "Css", "es", "ess"};
    add_no_good(model, sol, families, attempt + 1);
    res.extraction = std::move(ex);
  }
  res.status = TranslateStatus::kRetriesExhausted;
  res.seconds = elapsed();
  return res;
}

ReactionNetwork randomize_weights(const ReactionNetwork& net, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0 && epsilon < 1)) throw MilpError("epsilon must lie in (0, 1)");
  ReactionNetwork out = net;
  Rng rng(seed);
  std::map<std::pair<int, Rational>, Rational> drawn;
  for (Reaction& r : out.reactions) {
    auto key = std::make_pair(r.source, r.weight);
    auto it = drawn.find(key);
    if (it == drawn.end())
      it = drawn.emplace(key, rational_from_shortest(rng.uniform(std::sqrt(epsilon), 1 / std::sqrt(epsilon)))).first;
    r.weight = it->second;
  }
  return out;
}

std::vector<Complex> generate_candidates(const ReactionNetwork& net, int depth, int cap, int limit) {
  if (depth < 0) throw MilpError("depth must be nonnegative");
  const int n = net.num_species();
  std::vector<Complex> out;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  for (int i : kinetically_relevant(net)) {
    std::vector<int> y = net.complexes[i].dense(n);
    if (seen.insert(y).second) {
      out.push_back(net.complexes[i]);
      frontier.push_back(y);
    }
  }
  std::vector<std::vector<int>> vectors;
  for (std::size_t r = 0; r < net.reactions.size(); ++r) vectors.push_back(net.reaction_vector(static_cast<int>(r)));
  for (int level = 0; level < depth; ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& y : frontier)
      for (const auto& d : vectors) {
        std::vector<int> z(n);
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
          z[k] = y[k] + d[k];
          ok = z[k] >= 0 && z[k] <= cap;
        }
        if (!ok || !seen.insert(z).second) continue;
        out.push_back(Complex::from_dense(z));
        if (static_cast<int>(out.size()) > limit)
          throw MilpError("candidate count exceeds the limit of " + std::to_string(limit));
        next.push_back(std::move(z));
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace crnt
