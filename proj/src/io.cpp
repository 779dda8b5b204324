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
#include "crnt/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace crnt {

using json = nlohmann::json;

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

// Cursor over a single line; columns are 1-based.
class LineScanner {
 public:
  LineScanner(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected species name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string number_token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ',' &&
           text_[pos_] != '#')
      ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& message, int column = 0) const {
    throw ParseError(line_, column > 0 ? column : static_cast<int>(pos_) + 1, message);
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

Complex parse_complex(LineScanner& sc, std::vector<std::string>& species, std::map<std::string, int>& lookup) {
  const int start = (sc.skip_space(), sc.column());
  if (sc.peek() == '0') {
    std::string digits = sc.integer();
    if (digits == "0") {
      char next = sc.peek();
      if (!(std::isalpha(static_cast<unsigned char>(next)) || next == '_')) return Complex();
    }
    sc.fail("coefficient must be a positive integer", start);
  }
  std::map<int, int> coeffs;
  while (true) {
    const int term_col = (sc.skip_space(), sc.column());
    std::string digits = sc.integer();
    int coefficient = 1;
    if (!digits.empty()) {
      if (digits.size() > 9) sc.fail("coefficient too large", term_col);
      coefficient = std::stoi(digits);
      if (coefficient <= 0) sc.fail("coefficient must be a positive integer", term_col);
    }
    const int name_col = (sc.skip_space(), sc.column());
    std::string name = sc.identifier();
    auto [it, inserted] = lookup.emplace(name, static_cast<int>(species.size()));
    if (inserted) species.push_back(name);
    if (!coeffs.emplace(it->second, coefficient).second)
      sc.fail("species " + name + " repeated within one complex", name_col);
    if (!sc.consume("+")) break;
  }
  return Complex(coeffs);
}

Rational positive_weight(LineScanner& sc) {
  const int col = (sc.skip_space(), sc.column());
  std::string token = sc.number_token();
  Rational w;
  try {
    w = parse_rational(token);
  } catch (const std::invalid_argument&) {
    sc.fail("malformed weight '" + token + "'", col);
  }
  if (w <= 0) sc.fail("weight must be positive", col);
  return w;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  int number = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(strip_comment(line), ++number);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

// Deterministic JSON: sorted keys, doubles at 17 significant digits.
void dump(const json& j, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalar = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out.push_back('[');
      bool first = true;
      for (const json& e : j) {
        if (!first) out += scalar ? ", " : ",";
        first = false;
        if (!scalar) newline(depth + 1);
        dump(e, out, indent, depth + 1);
      }
      if (!scalar) newline(depth);
      out.push_back(']');
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  dump(j, out, 2, 0);
  out.push_back('\n');
  return out;
}

// Exact value when a double carries it, otherwise the exact string.
json rational_json(const Rational& r) {
  double d = to_double(r);
  if (rational_from_shortest(d) == r) {
    if (boost::multiprecision::denominator(r) == 1 && std::fabs(d) < 9e15) return static_cast<long long>(d);
    return d;
  }
  return format_rational(r);
}

Rational rational_of(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_shortest(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument(what + " must be a number or a numeric string");
}

json complex_json(const ReactionNetwork& net, const Complex& c) {
  json o = json::object();
  for (const auto& [s, v] : c.coefficients()) o[net.species[s]] = v;
  return o;
}

json one_based(const std::vector<int>& v) {
  json a = json::array();
  for (int i : v) a.push_back(i + 1);
  return a;
}

json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [i, j] : edges) a.push_back(json::array({i + 1, j + 1}));
  return a;
}

json partition_json(const std::vector<std::vector<int>>& p) {
  json a = json::array();
  for (const auto& block : p) a.push_back(one_based(block));
  return a;
}

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k] + 1);
  return s + "}";
}

std::string join(const std::vector<Edge>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k)
    s += (k ? "," : "") + std::string("(") + std::to_string(v[k].first + 1) + "," + std::to_string(v[k].second + 1) + ")";
  return s + "}";
}

std::string join(const std::vector<std::vector<int>>& p) {
  std::string s;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? " " : "") + join(p[k]);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return rational_from_decimal(text);
  Rational num = rational_from_decimal(text.substr(0, slash));
  Rational den = rational_from_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return num / den;
}

std::string format_rational(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  Integer rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();
  const int digits = std::max(twos, fives);
  Integer scaled = num * boost::multiprecision::pow(Integer(10), static_cast<unsigned>(digits)) / den;
  bool negative = scaled < 0;
  std::string s = (negative ? Integer(-scaled) : scaled).str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1 - s.size()), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

ReactionNetwork parse_crn(std::string_view text, std::vector<std::string>* warnings) {
  ReactionNetwork net;
  std::map<std::string, int> lookup;
  for_each_line(text, [&](std::string_view line, int number) {
    LineScanner sc(line, number);
    if (sc.at_end()) return;
    const int lhs_col = (sc.skip_space(), sc.column());
    Complex lhs = parse_complex(sc, net.species, lookup);
    bool reversible = false;
    if (sc.consume("<->")) {
      reversible = true;
    } else if (!sc.consume("->")) {
      sc.fail("expected '->' or '<->'");
    }
    Complex rhs = parse_complex(sc, net.species, lookup);
    if (lhs == rhs) sc.fail("self-reaction: source and target complexes coincide", lhs_col);
    sc.expect(";");
    Rational forward, reverse;
    if (reversible) {
      sc.expect("kf");
      sc.expect("=");
      forward = positive_weight(sc);
      sc.expect(",");
      sc.expect("kr");
      sc.expect("=");
      reverse = positive_weight(sc);
    } else {
      if (sc.peek() == 'k' && (sc.consume("kf") || sc.consume("kr")))
        sc.fail("irreversible reaction takes a single weight 'k'");
      sc.expect("k");
      sc.expect("=");
      forward = positive_weight(sc);
    }
    if (!sc.at_end()) sc.fail("unexpected trailing input");
    int i = net.add_complex(lhs);
    int j = net.add_complex(rhs);
    auto note = [&](int a, int b) {
      if (warnings)
        warnings->push_back("line " + std::to_string(number) + ": duplicate reaction " + net.complex_string(a) +
                            " -> " + net.complex_string(b) + " merged by summing weights");
    };
    if (net.add_reaction(i, j, forward)) note(i, j);
    if (reversible && net.add_reaction(j, i, reverse)) note(j, i);
  });
  return net;
}

std::string print_crn(const ReactionNetwork& net) {
  std::string out;
  for (const Reaction& r : net.reactions) {
    out += net.complex_string(r.source) + " -> " + net.complex_string(r.target) + " ; k = " + format_rational(r.weight);
    out.push_back('\n');
  }
  return out;
}

std::vector<Complex> parse_complex_list(std::string_view text, std::vector<std::string>& species) {
  std::map<std::string, int> lookup;
  for (std::size_t s = 0; s < species.size(); ++s) lookup.emplace(species[s], static_cast<int>(s));
  std::vector<Complex> out;
  for_each_line(text, [&](std::string_view line, int number) {
    LineScanner sc(line, number);
    if (sc.at_end()) return;
    out.push_back(parse_complex(sc, species, lookup));
    if (!sc.at_end()) sc.fail("unexpected trailing input");
  });
  return out;
}

GeneralizedNetwork parse_gcrn(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, 0, std::string("invalid JSON: ") + e.what());
  }
  auto schema = [](const std::string& m) { return ParseError(0, 0, "gcrn schema: " + m); };
  if (!doc.is_object() || !doc.contains("species") || !doc.contains("complexes") || !doc.contains("reactions"))
    throw schema("expected object with species, complexes, reactions");
  GeneralizedNetwork g;
  for (const json& s : doc["species"]) {
    if (!s.is_string()) throw schema("species names must be strings");
    if (g.base.find_species(s.get<std::string>()) >= 0) throw schema("duplicate species " + s.get<std::string>());
    g.base.add_species(s.get<std::string>());
  }
  auto read_complex = [&](const json& o) {
    if (!o.is_object()) throw schema("complex must be an object of species coefficients");
    std::map<int, int> coeffs;
    for (auto it = o.begin(); it != o.end(); ++it) {
      int s = g.base.find_species(it.key());
      if (s < 0) throw schema("unknown species " + it.key());
      if (!it.value().is_number_integer() || it.value().get<long long>() < 0)
        throw schema("coefficients must be non-negative integers");
      if (it.value().get<long long>() > 0) coeffs[s] = static_cast<int>(it.value().get<long long>());
    }
    return Complex(coeffs);
  };
  for (const json& c : doc["complexes"]) {
    if (!c.is_object() || !c.contains("stoich")) throw schema("complex entries need a stoich field");
    Complex stoich = read_complex(c["stoich"]);
    if (g.base.find_complex(stoich) >= 0) throw schema("complexes must be stoichiometrically distinct");
    g.base.complexes.push_back(stoich);
    if (c.contains("kinetic")) g.kinetic.push_back(read_complex(c["kinetic"]));
  }
  if (g.kinetic.size() != g.base.complexes.size())
    throw schema("kinetic complex list length differs from stoichiometric complex list");
  const int m = g.base.num_complexes();
  for (const json& r : doc["reactions"]) {
    if (!r.is_object() || !r.contains("from") || !r.contains("to") || !r.contains("weight"))
      throw schema("reactions need from, to, weight");
    if (!r["from"].is_number_integer() || !r["to"].is_number_integer()) throw schema("indices must be integers");
    int i = r["from"].get<int>() - 1, j = r["to"].get<int>() - 1;
    if (i < 0 || i >= m || j < 0 || j >= m) throw schema("reaction index out of range");
    Rational w;
    try {
      w = rational_of(r["weight"], "weight");
    } catch (const std::invalid_argument& e) {
      throw schema(e.what());
    }
    if (w <= 0) throw schema("weights must be positive");
    if (i == j) throw schema("self-reaction at complex " + std::to_string(i + 1));
    if (g.base.add_reaction(i, j, w)) throw schema("duplicate reaction");
  }
  return g;
}

std::string write_gcrn(const GeneralizedNetwork& g) {
  json doc;
  doc["species"] = g.base.species;
  json complexes = json::array();
  for (std::size_t i = 0; i < g.base.complexes.size(); ++i) {
    json c;
    c["stoich"] = complex_json(g.base, g.base.complexes[i]);
    c["kinetic"] = complex_json(g.base, g.kinetic.at(i));
    complexes.push_back(c);
  }
  doc["complexes"] = complexes;
  json reactions = json::array();
  for (const Reaction& r : g.base.reactions)
    reactions.push_back({{"from", r.source + 1}, {"to", r.target + 1}, {"weight", rational_json(r.weight)}});
  doc["reactions"] = reactions;
  return dump(doc);
}

TranslationCertificate parse_certificate(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, 0, std::string("invalid JSON: ") + e.what());
  }
  auto schema = [](const std::string& m) { return ParseError(0, 0, "certificate schema: " + m); };
  if (!doc.is_object() || !doc.contains("h")) throw schema("expected object with h");
  for (const char* key : {"h", "h_K", "lambda"})
    if (doc.contains(key) && !doc[key].is_array()) throw schema(std::string(key) + " must be an array");
  if (!doc.contains("h_K")) doc["h_K"] = json::array();
  if (!doc.contains("lambda")) doc["lambda"] = json::array();
  TranslationCertificate cert;
  auto pair = [&](const json& p) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw schema("map entries are [from, to] index pairs");
    return std::make_pair(p[0].get<int>() - 1, p[1].get<int>() - 1);
  };
  for (const json& p : doc["h"]) {
    auto [a, b] = pair(p);
    cert.h[a] = b;
  }
  for (const json& p : doc["h_K"]) {
    auto [a, b] = pair(p);
    cert.h_K[a] = b;
  }
  for (const json& e : doc["lambda"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw schema("lambda entries are [i, j', value]");
    try {
      cert.lambda[{e[0].get<int>() - 1, e[1].get<int>() - 1}] = rational_of(e[2], "lambda value");
    } catch (const std::invalid_argument& ex) {
      throw schema(ex.what());
    }
  }
  return cert;
}

namespace {

json certificate_json(const TranslationCertificate& cert) {
  json doc;
  doc["h"] = json::array();
  for (const auto& [a, b] : cert.h) doc["h"].push_back({a + 1, b + 1});
  doc["h_K"] = json::array();
  for (const auto& [a, b] : cert.h_K) doc["h_K"].push_back({a + 1, b + 1});
  doc["lambda"] = json::array();
  for (const auto& [key, v] : cert.lambda) doc["lambda"].push_back({key.first + 1, key.second + 1, rational_json(v)});
  return doc;
}

json analysis_json(const NetworkAnalysis& a) {
  json o;
  o["linkage_classes"] = partition_json(a.linkage_classes);
  o["strong_linkage_classes"] = partition_json(a.strong_linkage_classes);
  o["weakly_reversible"] = a.weakly_reversible;
  o["s"] = a.stoich_dim;
  o["delta"] = a.deficiency;
  o["kinetically_relevant"] = one_based(a.kinetically_relevant);
  if (a.generalized) {
    o["kinetic_order_dim"] = a.kinetic_order_dim;
    o["delta_K"] = a.kinetic_deficiency;
  }
  return o;
}

std::string analysis_text(const ReactionNetwork& net, const NetworkAnalysis& a) {
  std::ostringstream os;
  os << "species: " << net.num_species() << "\n";
  os << "complexes: " << net.num_complexes() << "\n";
  os << "reactions: " << net.reactions.size() << "\n";
  os << "linkage_classes: " << a.linkage_classes.size() << " " << join(a.linkage_classes) << "\n";
  os << "strong_linkage_classes: " << a.strong_linkage_classes.size() << " " << join(a.strong_linkage_classes)
     << "\n";
  os << "weakly_reversible: " << (a.weakly_reversible ? "true" : "false") << "\n";
  os << "s: " << a.stoich_dim << "\n";
  os << "delta: " << a.deficiency << "\n";
  if (a.generalized) {
    os << "kinetic_order_dim: " << a.kinetic_order_dim << "\n";
    os << "delta_K: " << a.kinetic_deficiency << "\n";
  }
  os << "kinetically_relevant: " << join(a.kinetically_relevant) << "\n";
  return os.str();
}

json network_json(const ReactionNetwork& net) {
  json o;
  o["species"] = net.species;
  json complexes = json::array();
  for (const Complex& c : net.complexes) complexes.push_back(complex_json(net, c));
  o["complexes"] = complexes;
  json reactions = json::array();
  for (const Reaction& r : net.reactions)
    reactions.push_back({{"from", r.source + 1}, {"to", r.target + 1}, {"weight", rational_json(r.weight)}});
  o["reactions"] = reactions;
  return o;
}

}  // namespace

std::string dump_json(const json& doc) { return dump(doc); }

std::string write_certificate(const TranslationCertificate& cert) { return dump(certificate_json(cert)); }

std::string write_analysis(const ReactionNetwork& net, const NetworkAnalysis& a, ReportFormat format) {
  if (format == ReportFormat::kJson) return dump(analysis_json(a));
  return analysis_text(net, a);
}

std::string write_analysis(const GeneralizedNetwork& g, const NetworkAnalysis& a, const KineticOrderAnalysis& k,
                           ReportFormat format) {
  if (format == ReportFormat::kJson) {
    json o = analysis_json(a);
    json basis = json::array();
    for (const RatVector& v : k.basis) {
      json row = json::array();
      for (const Rational& x : v) row.push_back(rational_json(x));
      basis.push_back(row);
    }
    o["S_K_basis"] = basis;
    return dump(o);
  }
  std::string out = analysis_text(g.base, a);
  out += "S_K_basis:";
  for (const RatVector& v : k.basis) {
    out += " (";
    for (std::size_t s = 0; s < v.size(); ++s) out += (s ? "," : "") + format_rational(v[s]);
    out += ")";
  }
  return out + "\n";
}

std::string write_report(const ReactionNetwork& orig, const GeneralizedNetwork& trans,
                         const TranslationCertificate& cert, const ResolvabilityReport& rep, ReportFormat format) {
  NetworkAnalysis a = analyze(trans);
  if (format == ReportFormat::kJson) {
    json doc;
    doc["network"] = network_json(orig);
    json t = json::parse(write_gcrn(trans));
    doc["translation"] = t;
    doc["certificate"] = certificate_json(cert);
    doc["analysis"] = {{"delta", a.deficiency}, {"delta_K", a.kinetic_deficiency},
                       {"weakly_reversible", a.weakly_reversible}};
    doc["proper"] = rep.proper();
    json r;
    r["C_I"] = one_based(rep.improper.C_I);
    json unresolved = json::object();
    for (const auto& [k, fiber] : rep.improper.unresolved) unresolved[std::to_string(k + 1)] = one_based(fiber);
    r["unresolved"] = unresolved;
    r["feasible"] = rep.resolving.has_value();
    r["C_R"] = rep.resolving ? one_based(rep.resolving->C_R) : json::array();
    json c = json::array();
    if (rep.resolving) {
      for (const PairResolution& p : rep.resolving->pairs) {
        json terms = json::array();
        for (const auto& [e, v] : p.c) terms.push_back({e.first + 1, e.second + 1, rational_json(v)});
        c.push_back({{"i", p.i + 1}, {"representative", p.representative + 1}, {"terms", terms}});
      }
    }
    r["c"] = c;
    r["lemma_holds"] = rep.lemma.holds;
    json witness = json::object();
    for (const auto& [p, k] : rep.lemma.witness) witness[std::to_string(p + 1)] = k + 1;
    r["lemma_witness"] = witness;
    if (rep.sets) {
      r["C_star"] = one_based(rep.sets->C_star);
      r["C_star_star"] = one_based(rep.sets->C_star_star);
      r["R_star"] = edges_json(rep.sets->R_star);
      r["R_star_star"] = edges_json(rep.sets->R_star_star);
    }
    r["conditions"] = {rep.verdict.condition[0], rep.verdict.condition[1], rep.verdict.condition[2],
                       rep.verdict.condition[3]};
    r["well_formed"] = rep.verdict.well_formed;
    r["resolvable"] = rep.resolvable();
    json tc = json::array();
    for (const Rational& k : rep.tree_constants) tc.push_back(rational_json(k));
    r["tree_constants"] = tc;
    if (rep.rescaling) {
      json sf = json::object();
      for (const auto& [i, f] : rep.rescaling->scale_factors) sf[std::to_string(i + 1)] = rational_json(f);
      r["scale_factors"] = sf;
      json w = json::array();
      for (const Rational& k : rep.rescaling->weights) w.push_back(rational_json(k));
      r["rescaled_weights"] = w;
      r["rescaling_exact"] = rep.rescaling->exact;
    }
    doc["resolvability"] = r;
    return dump(doc);
  }

  std::ostringstream os;
  os << "translation: " << trans.base.num_complexes() << " complexes, " << trans.base.reactions.size()
     << " reactions\n";
  os << "weakly_reversible: " << (a.weakly_reversible ? "true" : "false") << "\n";
  os << "delta: " << a.deficiency << "\n";
  os << "delta_K: " << a.kinetic_deficiency << "\n";
  os << "proper: " << (rep.proper() ? "true" : "false") << "\n";
  os << "C_I: " << join(rep.improper.C_I) << "\n";
  for (const auto& [k, fiber] : rep.improper.unresolved) os << "h^-1(" << k + 1 << "): " << join(fiber) << "\n";
  if (!rep.resolving) {
    os << "resolving set: infeasible\n";
  } else {
    os << "C_R: " << join(rep.resolving->C_R) << "\n";
    for (const PairResolution& p : rep.resolving->pairs) {
      os << "c[" << p.i + 1 << "->" << p.representative + 1 << "]:";
      for (const auto& [e, v] : p.c) os << " c(" << e.first + 1 << "," << e.second + 1 << ")=" << format_rational(v);
      os << "\n";
    }
  }
  os << "lemma: " << (rep.lemma.holds ? "holds" : "fails") << "\n";
  if (rep.sets) {
    os << "C*: " << join(rep.sets->C_star) << "\n";
    os << "C**: " << join(rep.sets->C_star_star) << "\n";
    os << "R*: " << join(rep.sets->R_star) << "\n";
    os << "R**: " << join(rep.sets->R_star_star) << "\n";
  }
  for (int k = 0; k < 4; ++k)
    os << "condition " << k + 1 << ": " << (rep.verdict.condition[k] ? "pass" : "fail") << "\n";
  os << "well_formed: " << (rep.verdict.well_formed ? "pass" : "fail") << "\n";
  os << "resolvable: " << (rep.resolvable() ? "true" : "false") << "\n";
  if (!rep.tree_constants.empty()) {
    os << "tree_constants:";
    for (const Rational& k : rep.tree_constants) os << " " << format_double(to_double(k));
    os << "\n";
  }
  if (rep.rescaling) {
    for (const auto& [i, f] : rep.rescaling->scale_factors)
      os << "scale_factor[" << i + 1 << "]: " << format_double(to_double(f)) << "\n";
    os << "rescaled_weights:";
    for (const Rational& k : rep.rescaling->weights) os << " " << format_double(to_double(k));
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace crnt
