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

#include "crnt/translation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace crnt {

namespace {

Digraph graph_of(const ReactionNetwork& net) {
  std::vector<Edge> edges;
  for (const Reaction& r : net.reactions) edges.emplace_back(r.source, r.target);
  return Digraph(net.num_complexes(), edges);
}

std::string idx(int i) { return std::to_string(i + 1); }

RatVector diff(const Complex& a, const Complex& b, int n) {
  RatVector v = a.rational(n);
  RatVector w = b.rational(n);
  for (int s = 0; s < n; ++s) v[s] -= w[s];
  return v;
}

std::vector<int> class_index(const std::vector<std::vector<int>>& classes, int m) {
  std::vector<int> out(m, -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int v : classes[c]) out[v] = static_cast<int>(c);
  return out;
}

bool contains(const std::vector<int>& sorted, int v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Rational rational_pow(const Rational& base, long exponent) {
  Rational result = 1;
  Rational b = exponent < 0 ? Rational(1) / base : base;
  for (long e = std::labs(exponent); e > 0; --e) result *= b;
  return result;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace

CertificateVerdict check_certificate(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                     const TranslationCertificate& cert) {
  const int m = orig.num_complexes();
  const int mt = trans.base.num_complexes();
  for (const auto& [i, ip] : cert.h)
    if (i < 0 || i >= m || ip < 0 || ip >= mt) throw std::out_of_range("certificate map h index out of range");
  for (const auto& [ip, i] : cert.h_K)
    if (i < 0 || i >= m || ip < 0 || ip >= mt) throw std::out_of_range("certificate map h_K index out of range");
  for (const auto& [key, value] : cert.lambda)
    if (key.first < 0 || key.first >= m || key.second < 0 || key.second >= mt)
      throw std::out_of_range("certificate lambda index out of range");

  CertificateVerdict verdict;
  auto fail = [&](const std::string& s) { verdict.violations.push_back(s); };

  const std::vector<int> relevant = kinetically_relevant(orig);
  const std::vector<int> relevant_t = kinetically_relevant(trans.base);
  std::vector<int> domain, image;
  for (const auto& [i, ip] : cert.h) {
    domain.push_back(i);
    image.push_back(ip);
  }
  image = sorted_unique(image);
  if (domain != relevant) fail("h: domain differs from the kinetically-relevant original complexes");
  if (image != relevant_t) fail("h: image differs from the kinetically-relevant translated complexes");

  std::map<Edge, Rational> btilde;
  for (const Reaction& r : trans.base.reactions) btilde[{r.source, r.target}] += r.weight;

  for (const auto& [key, value] : cert.lambda) {
    const auto [i, jp] = key;
    if (value < 0) fail("1(a): lambda(" + idx(i) + "," + idx(jp) + ") is negative");
    if (is_zero(value)) continue;
    auto it = cert.h.find(i);
    if (it == cert.h.end()) {
      fail("1(a): lambda(" + idx(i) + "," + idx(jp) + ") > 0 but h(" + idx(i) + ") is undefined");
      continue;
    }
    if (!btilde.count({it->second, jp}))
      fail("1(a): lambda(" + idx(i) + "," + idx(jp) + ") > 0 but (" + idx(it->second) + "," + idx(jp) +
           ") is not a translated reaction");
  }

  std::map<Edge, Rational> aggregate;
  for (const auto& [key, value] : cert.lambda) {
    auto it = cert.h.find(key.first);
    if (it != cert.h.end()) aggregate[{it->second, key.second}] += value;
  }
  std::set<Edge> pairs;
  for (const auto& [e, v] : btilde) pairs.insert(e);
  for (const auto& [e, v] : aggregate)
    if (!is_zero(v)) pairs.insert(e);
  for (const Edge& e : pairs) {
    Rational lhs = aggregate.count(e) ? aggregate[e] : Rational(0);
    Rational rhs = btilde.count(e) ? btilde[e] : Rational(0);
    if (lhs != rhs) fail("1(b): lambda sum for (" + idx(e.first) + "," + idx(e.second) + ") differs from its weight");
  }

  const int n = orig.num_species();
  if (trans.base.num_species() != n) {
    fail("1(c): species sets differ");
  } else {
    std::vector<RatVector> flux = net_flux_vectors(orig);
    for (int i : relevant) {
      auto it = cert.h.find(i);
      if (it == cert.h.end()) continue;
      RatVector lhs(n);
      for (auto l = cert.lambda.lower_bound({i, 0}); l != cert.lambda.end() && l->first.first == i; ++l) {
        RatVector d = diff(trans.base.complexes[l->first.second], trans.base.complexes[it->second], n);
        for (int s = 0; s < n; ++s) lhs[s] += l->second * d[s];
      }
      if (lhs != flux[i]) fail("1(c): flux identity fails for original complex " + idx(i));
    }
  }

  std::vector<int> kdomain;
  for (const auto& [ip, i] : cert.h_K) kdomain.push_back(ip);
  if (kdomain != relevant_t) fail("2: h_K domain differs from the kinetically-relevant translated complexes");
  for (const auto& [ip, i] : cert.h_K) {
    auto it = cert.h.find(i);
    if (it == cert.h.end() || it->second != ip) fail("2: h(h_K(" + idx(ip) + ")) != " + idx(ip));
    if (trans.kinetic.size() != trans.base.complexes.size() || !(trans.kinetic[ip] == orig.complexes[i]))
      fail("2: kinetic complex of " + idx(ip) + " differs from original complex " + idx(i));
  }
  return verdict;
}

std::optional<std::map<std::pair<int, int>, Rational>> solve_lambda(const ReactionNetwork& orig,
                                                                    const GeneralizedNetwork& trans,
                                                                    const std::map<int, int>& h) {
  const int n = orig.num_species();
  if (trans.base.num_species() != n) return std::nullopt;
  std::map<Edge, Rational> btilde;
  for (const Reaction& r : trans.base.reactions) btilde[{r.source, r.target}] += r.weight;
  std::vector<std::vector<int>> out(trans.base.num_complexes());
  for (const auto& [e, w] : btilde) out[e.first].push_back(e.second);

  std::vector<std::pair<int, int>> vars;
  for (const auto& [i, ip] : h)
    for (int jp : out[ip]) vars.emplace_back(i, jp);
  std::map<Edge, int> edge_row;
  for (const auto& [e, w] : btilde) edge_row.emplace(e, static_cast<int>(edge_row.size()));
  const int rows = static_cast<int>(edge_row.size()) + n * static_cast<int>(h.size());
  RatMatrix a(rows, static_cast<int>(vars.size()));
  RatVector b(rows);
  for (const auto& [e, r] : edge_row) b[r] = btilde[e];
  const std::vector<RatVector> flux = net_flux_vectors(orig);
  std::map<int, int> block;
  for (const auto& [i, ip] : h) {
    const int base = static_cast<int>(edge_row.size()) + n * static_cast<int>(block.size());
    block[i] = base;
    for (int sp = 0; sp < n; ++sp) b[base + sp] = flux[i][sp];
  }
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto [i, jp] = vars[v];
    const int ip = h.at(i);
    a(edge_row.at({ip, jp}), static_cast<int>(v)) = 1;
    RatVector d = diff(trans.base.complexes[jp], trans.base.complexes[ip], n);
    for (int sp = 0; sp < n; ++sp) a(block[i] + sp, static_cast<int>(v)) = d[sp];
  }
  std::optional<RatVector> x = nonnegative_solution(a, b);
  if (!x) return std::nullopt;
  std::map<std::pair<int, int>, Rational> lambda;
  for (std::size_t v = 0; v < vars.size(); ++v)
    if (!is_zero((*x)[v])) lambda[vars[v]] = (*x)[v];
  return lambda;
}

std::optional<TranslationCertificate> infer_certificate(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                                        const TranslationCertificate& partial) {
  const int n = orig.num_species();
  if (trans.base.num_species() != n) return std::nullopt;
  const std::vector<int> relevant = kinetically_relevant(orig);
  const std::vector<int> relevant_t = kinetically_relevant(trans.base);

  std::vector<std::map<int, int>> h_options;
  if (!partial.h.empty()) {
    h_options.push_back(partial.h);
  } else {
    // Per-source candidates that admit a local flux decomposition.
    std::vector<std::vector<int>> cands(relevant.size());
    for (std::size_t a = 0; a < relevant.size(); ++a) {
      const int i = relevant[a];
      std::vector<int> ordered;
      for (int ip : relevant_t)
        if (trans.kinetic[ip] == orig.complexes[i]) ordered.push_back(ip);
      for (int ip : relevant_t)
        if (!(trans.kinetic[ip] == orig.complexes[i])) ordered.push_back(ip);
      for (int ip : ordered) {
        std::vector<int> targets;
        for (const Reaction& r : trans.base.reactions)
          if (r.source == ip) targets.push_back(r.target);
        RatMatrix m(n, static_cast<int>(targets.size()));
        for (std::size_t t = 0; t < targets.size(); ++t) {
          RatVector d = diff(trans.base.complexes[targets[t]], trans.base.complexes[ip], n);
          for (int sp = 0; sp < n; ++sp) m(sp, static_cast<int>(t)) = d[sp];
        }
        if (nonnegative_solution(m, net_flux_vectors(orig)[i])) cands[a].push_back(ip);
      }
      if (cands[a].empty()) return std::nullopt;
    }
    constexpr int kMaxCombos = 4096;
    std::vector<std::size_t> pick(relevant.size(), 0);
    for (int combos = 0; combos < kMaxCombos; ++combos) {
      std::map<int, int> h;
      std::vector<int> image;
      for (std::size_t a = 0; a < relevant.size(); ++a) {
        h[relevant[a]] = cands[a][pick[a]];
        image.push_back(cands[a][pick[a]]);
      }
      if (sorted_unique(image) == relevant_t) h_options.push_back(h);
      std::size_t a = 0;
      while (a < relevant.size() && ++pick[a] == cands[a].size()) pick[a++] = 0;
      if (a == relevant.size()) break;
    }
  }

  for (const std::map<int, int>& h : h_options) {
    TranslationCertificate cert;
    cert.h = h;
    if (!partial.h_K.empty()) {
      cert.h_K = partial.h_K;
    } else {
      bool ok = true;
      for (int ip : relevant_t) {
        int rep = -1;
        for (const auto& [i, jp] : h)
          if (jp == ip && trans.kinetic[ip] == orig.complexes[i]) {
            rep = i;
            break;
          }
        if (rep < 0) {
          ok = false;
          break;
        }
        cert.h_K[ip] = rep;
      }
      if (!ok) continue;
    }
    if (!partial.lambda.empty()) {
      cert.lambda = partial.lambda;
    } else {
      auto lambda = solve_lambda(orig, trans, h);
      if (!lambda) continue;
      cert.lambda = std::move(*lambda);
    }
    if (check_certificate(orig, trans, cert).valid()) return cert;
  }
  return std::nullopt;
}

TranslationKind classify(const TranslationCertificate& cert) {
  std::set<int> image;
  for (const auto& [i, ip] : cert.h)
    if (!image.insert(ip).second) return TranslationKind::kImproper;
  return TranslationKind::kProper;
}

ImproperSets improper_sets(const ReactionNetwork& orig, const GeneralizedNetwork&,
                           const TranslationCertificate& cert) {
  ImproperSets out;
  std::map<int, std::vector<int>> fibers;
  for (const auto& [i, ip] : cert.h) fibers[ip].push_back(i);
  const int n = orig.num_species();
  std::vector<RatVector> diffs;
  for (auto& [ip, fiber] : fibers) {
    if (fiber.size() < 2) continue;
    out.C_I.push_back(ip);
    out.unresolved[ip] = fiber;
    for (std::size_t a = 1; a < fiber.size(); ++a)
      diffs.push_back(diff(orig.complexes[fiber[a]], orig.complexes[fiber[0]], n));
  }
  if (!diffs.empty()) {
    RatMatrix a = RatMatrix::from_rows(diffs, n);
    std::vector<int> pivots = rref(a);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      RatVector v(n);
      for (int c = 0; c < n; ++c) v[c] = a(static_cast<int>(r), c);
      out.subspace_basis.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

// Solves target = sum over classes of sum_t c(root, t) (yK_t - yK_root) with
// root = min of the subset's members in that class.
std::optional<std::map<Edge, Rational>> solve_with_subset(const GeneralizedNetwork& trans,
                                                          const std::vector<int>& subset,
                                                          const std::vector<int>& cls, const RatVector& target) {
  const int n = trans.base.num_species();
  std::map<int, int> root;
  for (int v : subset) {
    auto [it, inserted] = root.emplace(cls[v], v);
    if (!inserted) it->second = std::min(it->second, v);
  }
  std::vector<RatVector> cols;
  std::vector<Edge> keys;
  for (int v : subset) {
    int r = root[cls[v]];
    if (r == v) continue;
    cols.push_back(diff(trans.kinetic[v], trans.kinetic[r], n));
    keys.emplace_back(r, v);
  }
  if (cols.empty()) {
    if (is_zero(target)) return std::map<Edge, Rational>{};
    return std::nullopt;
  }
  std::optional<RatVector> x = solve(RatMatrix::from_columns(cols, n), target);
  if (!x) return std::nullopt;
  std::map<Edge, Rational> c;
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (!is_zero((*x)[k])) c[keys[k]] = (*x)[k];
  return c;
}

std::optional<std::map<Edge, Rational>> minimal_resolution(const GeneralizedNetwork& trans,
                                                           const std::vector<int>& allowed,
                                                           const std::vector<int>& cls, const RatVector& target,
                                                           const std::set<int>& used) {
  if (is_zero(target)) return std::map<Edge, Rational>{};
  if (!solve_with_subset(trans, allowed, cls, target)) return std::nullopt;

  constexpr double kEnumerationCap = 2e5;
  const int a = static_cast<int>(allowed.size());
  double combos = 1;
  for (int s = 2; s <= a; ++s) {
    combos = combos * (a - s + 2) / (s - 1);
    if (combos > kEnumerationCap) break;
    std::optional<std::map<Edge, Rational>> best;
    int best_new = s + 1;
    std::vector<int> pick(s);
    for (int k = 0; k < s; ++k) pick[k] = k;
    while (true) {
      std::vector<int> subset(s);
      for (int k = 0; k < s; ++k) subset[k] = allowed[pick[k]];
      std::map<int, int> per_class;
      for (int v : subset) ++per_class[cls[v]];
      bool lonely = false;
      for (const auto& [c, count] : per_class) lonely |= count < 2;
      if (!lonely) {
        int fresh = 0;
        for (int v : subset) fresh += used.count(v) ? 0 : 1;
        if (fresh < best_new) {
          auto c = solve_with_subset(trans, subset, cls, target);
          if (c) {
            best = std::move(c);
            best_new = fresh;
          }
        }
      }
      int k = s - 1;
      while (k >= 0 && pick[k] == a - s + k) --k;
      if (k < 0) break;
      ++pick[k];
      for (int j = k + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best) return best;
  }
  return solve_with_subset(trans, allowed, cls, target);
}

}  // namespace

std::optional<ResolvingSet> find_resolving_set(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                               const TranslationCertificate& cert) {
  ImproperSets imp = improper_sets(orig, trans, cert);
  const int mt = trans.base.num_complexes();
  const int n = orig.num_species();
  std::vector<int> cls = class_index(linkage_classes(trans.base), mt);
  std::vector<int> all(mt), outside;
  for (int v = 0; v < mt; ++v) {
    all[v] = v;
    if (!contains(imp.C_I, v)) outside.push_back(v);
  }

  ResolvingSet out;
  std::set<int> used;
  for (const auto& [kp, fiber] : imp.unresolved) {
    auto rep_it = cert.h_K.find(kp);
    int rep = rep_it != cert.h_K.end() ? rep_it->second : fiber.front();
    for (int i : fiber) {
      if (i == rep) continue;
      RatVector target = diff(orig.complexes[rep], orig.complexes[i], n);
      auto c = minimal_resolution(trans, outside, cls, target, used);
      if (!c) c = minimal_resolution(trans, all, cls, target, used);
      if (!c) return std::nullopt;
      for (const auto& [e, v] : *c) {
        used.insert(e.first);
        used.insert(e.second);
      }
      out.pairs.push_back(PairResolution{i, rep, std::move(*c)});
    }
  }
  out.C_R.assign(used.begin(), used.end());
  return out;
}

LemmaResult check_lemma_star(const ReactionNetwork& trans, const std::vector<int>& C_I,
                             const std::vector<int>& C_R) {
  const Digraph g = graph_of(trans);
  const int mt = trans.num_complexes();
  const std::vector<int> imp = sorted_unique(C_I);
  LemmaResult out;
  out.holds = true;
  for (int p : imp) {
    std::vector<bool> reach = g.reachable(p);
    bool vacuous = std::none_of(C_R.begin(), C_R.end(), [&](int r) { return reach[r]; });
    int chosen = -1;
    if (vacuous) {
      for (int k = 0; k < mt && chosen < 0; ++k)
        if (k != p && reach[k] && !contains(imp, k)) chosen = k;
    } else {
      for (int k = 0; k < mt && chosen < 0; ++k) {
        if (k == p || !reach[k]) continue;
        std::vector<bool> blocked(mt, false);
        blocked[k] = true;
        std::vector<bool> avoid = g.reachable(p, blocked);
        if (std::none_of(C_R.begin(), C_R.end(), [&](int r) { return avoid[r]; })) chosen = k;
      }
    }
    if (chosen < 0) {
      out.holds = false;
      continue;
    }
    out.witness[p] = chosen;
  }
  return out;
}

TheoremVerdict check_theorem_conditions(const ReactionNetwork& trans, const std::vector<int>& C_I,
                                        const std::vector<int>& C_R, const TheoremSets& sets) {
  TheoremVerdict v;
  const int mt = trans.num_complexes();
  auto in_range = [&](int i) { return i >= 0 && i < mt; };
  const std::vector<int> cs = sorted_unique(sets.C_star);
  const std::vector<int> css = sorted_unique(sets.C_star_star);

  std::set<Edge> reactions;
  for (const Reaction& r : trans.reactions) reactions.insert({r.source, r.target});
  const std::set<Edge> rs(sets.R_star.begin(), sets.R_star.end());
  const std::set<Edge> rss(sets.R_star_star.begin(), sets.R_star_star.end());

  bool ok = std::all_of(cs.begin(), cs.end(), in_range) && std::all_of(css.begin(), css.end(), in_range);
  for (int i : css) ok &= !contains(cs, i);
  for (const Edge& e : rs) ok &= reactions.count(e) && (contains(cs, e.second) || contains(css, e.second));
  for (const Edge& e : rss) ok &= contains(css, e.first) && contains(cs, e.second);
  v.well_formed = ok;

  v.condition[0] = std::all_of(C_I.begin(), C_I.end(), [&](int i) { return contains(cs, i); }) &&
                   std::none_of(C_R.begin(), C_R.end(), [&](int i) { return contains(cs, i); });

  std::set<Edge> sourced;
  for (const Edge& e : reactions)
    if (contains(cs, e.first)) sourced.insert(e);
  v.condition[1] = sourced == rs;

  if (!ok) return v;
  std::vector<int> verts = cs;
  verts.insert(verts.end(), css.begin(), css.end());
  std::sort(verts.begin(), verts.end());
  auto local = [&](int i) { return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), i) - verts.begin()); };
  std::vector<Edge> edges;
  for (const Edge& e : rs) edges.emplace_back(local(e.first), local(e.second));
  for (const Edge& e : rss) edges.emplace_back(local(e.first), local(e.second));
  Digraph aux(static_cast<int>(verts.size()), edges);
  auto weak = aux.weak_components();
  v.condition[2] = css.size() == weak.size();
  v.condition[3] = weak == aux.strong_components();
  return v;
}

namespace {

// Witness candidates k' for one improper complex, increasing index.
std::vector<int> witness_options(const Digraph& g, int p, const std::vector<int>& C_I, const std::vector<int>& C_R) {
  const int mt = g.size();
  std::vector<bool> reach = g.reachable(p);
  const bool vacuous = std::none_of(C_R.begin(), C_R.end(), [&](int r) { return reach[r]; });
  std::vector<int> out;
  for (int k = 0; k < mt; ++k) {
    if (k == p || !reach[k] || (vacuous && contains(C_I, k))) continue;
    std::vector<bool> blocked(mt, false);
    blocked[k] = true;
    std::vector<bool> avoid = g.reachable(p, blocked);
    if (std::none_of(C_R.begin(), C_R.end(), [&](int r) { return avoid[r]; })) out.push_back(k);
  }
  return out;
}

TheoremSets sets_from_witness(const ReactionNetwork& trans, const Digraph& g, const std::vector<int>& C_I,
                              const std::vector<int>& C_R, const std::map<int, int>& witness) {
  const int mt = trans.num_complexes();
  TheoremSets sets;
  std::vector<bool> in_star(mt, false);
  for (const auto& [p, k] : witness) {
    std::vector<bool> blocked(mt, false);
    blocked[k] = true;
    std::vector<bool> reach = g.reachable(p, blocked);
    for (int v = 0; v < mt; ++v) in_star[v] = in_star[v] || reach[v];
  }
  for (int v = 0; v < mt; ++v)
    if (in_star[v]) sets.C_star.push_back(v);
  std::set<int> ks;
  for (const auto& [p, k] : witness)
    if (!in_star[k]) ks.insert(k);
  sets.C_star_star.assign(ks.begin(), ks.end());
  for (const Reaction& r : trans.reactions)
    if (in_star[r.source]) sets.R_star.emplace_back(r.source, r.target);
  std::sort(sets.R_star.begin(), sets.R_star.end());

  std::vector<bool> inside(in_star);
  for (int k : sets.C_star_star) inside[k] = true;
  std::vector<Edge> star_edges;
  for (const Edge& e : sets.R_star)
    if (inside[e.second]) star_edges.push_back(e);
  Digraph star(mt, star_edges);
  const std::vector<int> imp = sorted_unique(C_I);
  // One back edge per k' to the lowest improper complex reaching it; all
  // reaching improper complexes when that is not enough.
  std::vector<Edge> all_back;
  for (int k : sets.C_star_star) {
    bool first = true;
    for (int p : imp) {
      if (!star.reachable(p)[k]) continue;
      if (first) sets.R_star_star.emplace_back(k, p);
      first = false;
      all_back.emplace_back(k, p);
    }
  }
  if (!check_theorem_conditions(trans, C_I, C_R, sets).holds()) sets.R_star_star = all_back;
  std::sort(sets.R_star_star.begin(), sets.R_star_star.end());
  return sets;
}

}  // namespace

std::optional<TheoremSets> construct_theorem_witness(const ReactionNetwork& trans, const std::vector<int>& C_I,
                                                     const std::vector<int>& C_R) {
  if (C_I.empty()) return TheoremSets{};
  LemmaResult lemma = check_lemma_star(trans, C_I, C_R);
  if (!lemma.holds) return std::nullopt;
  const Digraph g = graph_of(trans);
  const std::vector<int> imp = sorted_unique(C_I);

  // Smallest C* u C** over witness combinations, then fewest back edges.
  std::vector<std::vector<int>> options;
  std::size_t combos = 1;
  constexpr std::size_t kMaxCombos = 4096;
  for (int p : imp) {
    options.push_back(witness_options(g, p, imp, C_R));
    combos = options.back().empty() ? 0 : std::min(kMaxCombos + 1, combos * options.back().size());
  }
  std::optional<TheoremSets> best = sets_from_witness(trans, g, C_I, C_R, lemma.witness);
  if (!check_theorem_conditions(trans, C_I, C_R, *best).holds()) best.reset();
  auto size_of = [](const TheoremSets& t) {
    return std::make_pair(t.C_star.size() + t.C_star_star.size(), t.R_star_star.size());
  };
  if (combos > 0 && combos <= kMaxCombos) {
    std::vector<std::size_t> pick(imp.size(), 0);
    for (;;) {
      std::map<int, int> witness;
      for (std::size_t a = 0; a < imp.size(); ++a) witness[imp[a]] = options[a][pick[a]];
      TheoremSets sets = sets_from_witness(trans, g, C_I, C_R, witness);
      if (check_theorem_conditions(trans, C_I, C_R, sets).holds() && (!best || size_of(sets) < size_of(*best)))
        best = std::move(sets);
      std::size_t a = imp.size();
      while (a > 0 && ++pick[a - 1] == options[a - 1].size()) pick[--a] = 0;
      if (a == 0) break;
    }
  }
  return best;
}

std::vector<Rational> tree_constants(const ReactionNetwork& net) {
  if (!is_weakly_reversible(net)) throw NetworkError("tree constants require a weakly reversible network");
  const RatMatrix a = kirchhoff_matrix(net);
  std::vector<Rational> out(net.num_complexes(), Rational(1));
  for (const std::vector<int>& cls : linkage_classes(net)) {
    const int size = static_cast<int>(cls.size());
    if (size == 1) continue;
    for (int drop = 0; drop < size; ++drop) {
      RatMatrix minor(size - 1, size - 1);
      for (int r = 0, rr = 0; r < size; ++r) {
        if (r == drop) continue;
        for (int c = 0, cc = 0; c < size; ++c) {
          if (c == drop) continue;
          minor(rr, cc) = -a(cls[r], cls[c]);
          ++cc;
        }
        ++rr;
      }
      out[cls[drop]] = determinant(std::move(minor));
    }
  }
  return out;
}

std::vector<SpanningTree> enumerate_spanning_itrees(const ReactionNetwork& net, int root, int max_size) {
  if (root < 0 || root >= net.num_complexes()) throw std::out_of_range("root index out of range");
  std::vector<int> cls;
  for (const auto& c : linkage_classes(net))
    if (contains(c, root)) cls = c;
  if (static_cast<int>(cls.size()) > max_size)
    throw NetworkError("linkage class of " + std::to_string(cls.size()) + " complexes exceeds enumeration guard");

  std::vector<int> others;
  for (int v : cls)
    if (v != root) others.push_back(v);
  std::vector<std::vector<int>> choices(others.size());
  for (std::size_t k = 0; k < others.size(); ++k)
    for (std::size_t r = 0; r < net.reactions.size(); ++r)
      if (net.reactions[r].source == others[k]) choices[k].push_back(static_cast<int>(r));

  std::vector<SpanningTree> trees;
  if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) return trees;
  std::vector<std::size_t> pick(others.size(), 0);
  std::map<int, int> next;
  while (true) {
    next.clear();
    for (std::size_t k = 0; k < others.size(); ++k) next[others[k]] = net.reactions[choices[k][pick[k]]].target;
    bool tree = true;
    for (int v : others) {
      int steps = 0, w = v;
      while (w != root && steps <= static_cast<int>(others.size())) {
        w = next[w];
        ++steps;
      }
      if (w != root) {
        tree = false;
        break;
      }
    }
    if (tree) {
      SpanningTree t{root, {}};
      for (std::size_t k = 0; k < others.size(); ++k) t.reactions.push_back(choices[k][pick[k]]);
      std::sort(t.reactions.begin(), t.reactions.end());
      trees.push_back(std::move(t));
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return trees;
}

Rational tree_weight(const ReactionNetwork& net, const SpanningTree& tree) {
  Rational w = 1;
  for (int r : tree.reactions) w *= net.reactions.at(r).weight;
  return w;
}

std::vector<Rational> aggregate_lambda(const GeneralizedNetwork& trans, const TranslationCertificate& cert,
                                       const std::map<int, Rational>& factors) {
  std::map<Edge, Rational> sums;
  for (const auto& [key, value] : cert.lambda) {
    auto it = cert.h.find(key.first);
    if (it == cert.h.end()) continue;
    auto f = factors.find(key.first);
    sums[{it->second, key.second}] += f == factors.end() ? value : value * f->second;
  }
  std::vector<Rational> out;
  for (const Reaction& r : trans.base.reactions) {
    auto it = sums.find({r.source, r.target});
    out.push_back(it == sums.end() ? Rational(0) : it->second);
  }
  return out;
}

Rescaling rescale_weights(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                          const TranslationCertificate& cert, const ResolvingSet& resolving) {
  Rescaling out;
  ImproperSets imp = improper_sets(orig, trans, cert);
  for (const auto& [kp, fiber] : imp.unresolved) {
    auto rep = cert.h_K.find(kp);
    if (rep == cert.h_K.end()) throw std::invalid_argument("missing representative for improper complex " + idx(kp));
    out.scale_factors[rep->second] = 1;
    for (int i : fiber) {
      if (i == rep->second) continue;
      bool found = std::any_of(resolving.pairs.begin(), resolving.pairs.end(),
                               [&](const PairResolution& p) { return p.i == i && p.representative == rep->second; });
      if (!found) throw std::invalid_argument("missing resolving coefficients for original complex " + idx(i));
    }
  }

  const std::vector<Rational> kappa = imp.C_I.empty() ? std::vector<Rational>{} : tree_constants(trans.base);
  for (const PairResolution& p : resolving.pairs) {
    bool integral = std::all_of(p.c.begin(), p.c.end(), [](const auto& kv) { return is_integer(kv.second); });
    if (integral) {
      Rational f = 1;
      for (const auto& [e, c] : p.c) {
        long exponent = boost::multiprecision::numerator(c).convert_to<long>();
        f *= rational_pow(kappa[e.first] / kappa[e.second], exponent);
      }
      out.scale_factors[p.i] = f;
    } else {
      double logf = 0;
      for (const auto& [e, c] : p.c) logf += to_double(c) * std::log(to_double(kappa[e.first] / kappa[e.second]));
      out.scale_factors[p.i] = rational_from_double(std::exp(logf));
      out.exact = false;
    }
  }

  out.weights.reserve(trans.base.reactions.size());
  std::map<Edge, Rational> extra;
  for (const auto& [key, value] : cert.lambda) {
    auto f = out.scale_factors.find(key.first);
    if (f == out.scale_factors.end() || f->second == 1) continue;
    extra[{cert.h.at(key.first), key.second}] += (f->second - 1) * value;
  }
  for (const Reaction& r : trans.base.reactions) {
    auto it = extra.find({r.source, r.target});
    out.weights.push_back(it == extra.end() ? r.weight : r.weight + it->second);
  }
  return out;
}

ResolvabilityReport analyze_resolvability(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                                          const TranslationCertificate& cert, const TheoremSets* given) {
  ResolvabilityReport rep;
  rep.improper = improper_sets(orig, trans, cert);
  rep.resolving = find_resolving_set(orig, trans, cert);
  const std::vector<int> c_r = rep.resolving ? rep.resolving->C_R : std::vector<int>{};
  rep.lemma = check_lemma_star(trans.base, rep.improper.C_I, c_r);
  if (given) {
    rep.sets = *given;
  } else {
    rep.sets = construct_theorem_witness(trans.base, rep.improper.C_I, c_r);
  }
  if (rep.sets) rep.verdict = check_theorem_conditions(trans.base, rep.improper.C_I, c_r, *rep.sets);
  if (is_weakly_reversible(trans.base)) rep.tree_constants = tree_constants(trans.base);
  if (rep.resolvable() && (rep.proper() || !rep.tree_constants.empty()))
    rep.rescaling = rescale_weights(orig, trans, cert, *rep.resolving);
  return rep;
}

}  // namespace crnt
