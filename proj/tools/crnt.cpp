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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crnt/io.hpp"
#include "crnt/json_io.hpp"
#include "crnt/lp.hpp"
#include "crnt/milp.hpp"
#include "crnt/network.hpp"
#include "crnt/translation.hpp"
#include "crnt/verify.hpp"

namespace {

using crnt::ReportFormat;
using json = nlohmann::json;

enum Exit { kOk = 0, kInfeasible = 1, kParse = 2, kNumeric = 3, kBudget = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  int ell_star = 2;
  bool proper_only = false;
  std::string objective = "lex";
  std::string candidates;
  int auto_depth = 1;
  std::string solver = "internal";
  int threads = 1;
  std::string format = "text";
  int trials = 25;
  bool random_weights = false;
  std::string certificate;
  std::string output_dir = ".";
  double max_seconds = 600;
  long max_nodes = 1000000;
  bool no_rescale = false;
  bool verbose = false;
};

ReportFormat format_of(const Flags& f) { return f.format == "json" ? ReportFormat::kJson : ReportFormat::kText; }

bool is_generalized_file(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  return ext == ".gcrn" || ext == ".json";
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

crnt::ReactionNetwork load_network(const std::string& path) {
  if (is_generalized_file(path)) {
    crnt::GeneralizedNetwork g = crnt::parse_gcrn(crnt::read_file(path));
    for (std::size_t i = 0; i < g.kinetic.size(); ++i)
      if (!(g.kinetic[i] == g.base.complexes[i])) throw UsageError(path + " is not a mass-action network");
    return g.base;
  }
  std::vector<std::string> warnings;
  crnt::ReactionNetwork net = crnt::parse_crn(crnt::read_file(path), &warnings);
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return net;
}

crnt::GeneralizedNetwork load_generalized(const std::string& path) {
  if (is_generalized_file(path)) return crnt::parse_gcrn(crnt::read_file(path));
  return crnt::identity_generalization(load_network(path));
}

crnt::TranslationCertificate load_certificate(const crnt::ReactionNetwork& orig, const crnt::GeneralizedNetwork& trans,
                                              const std::string& path) {
  crnt::TranslationCertificate partial;
  if (!path.empty()) partial = crnt::parse_certificate(crnt::read_file(path));
  auto cert = crnt::infer_certificate(orig, trans, partial);
  if (!cert) throw crnt::NetworkError("no translation certificate exists for this pair");
  return *cert;
}

int cmd_analyze(const std::string& path, const Flags& f) {
  if (is_generalized_file(path)) {
    crnt::GeneralizedNetwork g = load_generalized(path);
    std::cout << crnt::write_analysis(g, crnt::analyze(g), crnt::kinetic_order_analysis(g), format_of(f));
  } else {
    crnt::ReactionNetwork net = load_network(path);
    std::cout << crnt::write_analysis(net, crnt::analyze(net), format_of(f));
  }
  return kOk;
}

crnt::ObjectiveMode objective_of(const std::string& name) {
  if (name == "mindef") return crnt::ObjectiveMode::kMinDeficiency;
  if (name == "minc") return crnt::ObjectiveMode::kMinComponents;
  return crnt::ObjectiveMode::kLexicographic;
}

const char* status_name(crnt::TranslateStatus s) {
  switch (s) {
    case crnt::TranslateStatus::kFound:
      return "found";
    case crnt::TranslateStatus::kInfeasible:
      return "infeasible";
    case crnt::TranslateStatus::kBudget:
      return "budget";
    case crnt::TranslateStatus::kRetriesExhausted:
      return "retries_exhausted";
  }
  return "unknown";
}

int cmd_translate(const std::string& path, const Flags& f) {
  crnt::ReactionNetwork net = load_network(path);
  if (f.random_weights) net = crnt::randomize_weights(net, f.epsilon, crnt::derive_seed(f.seed, 1));
  std::vector<crnt::Complex> candidates;
  if (!f.candidates.empty()) {
    std::vector<std::string> species = net.species;
    candidates = crnt::parse_complex_list(crnt::read_file(f.candidates), species);
    if (species.size() != net.species.size()) throw UsageError("candidate file uses species absent from the network");
  } else {
    candidates = crnt::generate_candidates(net, f.auto_depth);
  }

  namespace fs = std::filesystem;
  fs::create_directories(f.output_dir);
  std::string base = (fs::path(f.output_dir) / stem_of(path)).string();

  crnt::TranslateOptions opt;
  opt.epsilon = f.epsilon;
  opt.ell_star = f.ell_star;
  opt.proper_only = f.proper_only;
  opt.objective = objective_of(f.objective);
  opt.seed = f.seed;
  opt.solver.max_seconds = f.max_seconds;
  opt.solver.max_nodes = f.max_nodes;
  opt.solver.threads = f.threads;
  opt.solver.seed = f.seed;
  opt.solver.log = f.verbose;

  if (f.solver == "lp-export") {
    crnt::MilpParameters p = crnt::init_parameters(net, candidates, f.epsilon, f.ell_star, f.seed);
    crnt::MilpModel model = crnt::build_model(p, f.proper_only);
    crnt::set_objective(model, p, opt.objective);
    crnt::write_file(base + ".lp", crnt::export_lp(model));
    std::cout << "model: " << model.variables.size() << " variables, " << model.rows.size() << " constraints\n";
    std::cout << "written: " << base << ".lp\n";
    return kOk;
  }

  crnt::TranslateResult res = crnt::find_translation(net, candidates, opt);
  if (f.verbose)
    std::fprintf(stderr, "nodes %ld lp_iterations %ld seconds %.2f\n", res.nodes, res.lp_iterations, res.seconds);
  bool found = res.status == crnt::TranslateStatus::kFound && res.extraction;
  std::string report;
  if (found) {
    const crnt::Extraction& ex = *res.extraction;
    report = crnt::write_report(net, ex.trans, ex.cert, ex.report, format_of(f));
    crnt::write_file(base + ".translation.gcrn", crnt::write_gcrn(ex.trans));
    crnt::write_file(base + ".certificate.json", crnt::write_certificate(ex.cert));
    crnt::write_file(base + (f.format == "json" ? ".report.json" : ".report.txt"), report);
  }

  if (f.format == "json") {
    json doc;
    doc["status"] = status_name(res.status);
    doc["optimal"] = res.optimal;
    doc["num_classes"] = res.num_classes;
    doc["star_size"] = res.star_size;
    doc["retries"] = res.retries;
    doc["rejected"] = res.rejected;
    doc["variables"] = res.variables;
    doc["constraints"] = res.constraints;
    doc["candidates"] = candidates.size();
    if (found) {
      doc["used_candidates"] = json::array();
      for (int c : res.extraction->used) doc["used_candidates"].push_back(c + 1);
      doc["report"] = json::parse(report);
    }
    std::cout << crnt::dump_json(doc);
  } else {
    std::cout << "status: " << status_name(res.status) << (found && !res.optimal ? " (not proven optimal)" : "")
              << "\n";
    std::cout << "model: " << res.variables << " variables, " << res.constraints << " constraints, "
              << candidates.size() << " candidates\n";
    std::cout << "nonempty classes: " << res.num_classes << "\n";
    std::cout << "star size: " << res.star_size << "\n";
    std::cout << "retries: " << res.retries << "\n";
    for (const auto& r : res.rejected) std::cout << "rejected: " << r << "\n";
    if (found) {
      std::cout << "used candidates:";
      for (int c : res.extraction->used) std::cout << " " << c + 1;
      std::cout << "\n" << report;
      std::cout << "written: " << base << ".translation.gcrn " << base << ".certificate.json " << base
                << ".report.txt\n";
    }
  }
  switch (res.status) {
    case crnt::TranslateStatus::kFound:
      return kOk;
    case crnt::TranslateStatus::kInfeasible:
      return kInfeasible;
    default:
      return kBudget;
  }
}

struct Pair {
  crnt::ReactionNetwork orig;
  crnt::GeneralizedNetwork trans;
  crnt::TranslationCertificate cert;
  crnt::ResolvabilityReport report;
};

Pair load_pair(const std::string& orig_path, const std::string& trans_path, const Flags& f) {
  Pair p;
  p.orig = load_network(orig_path);
  p.trans = load_generalized(trans_path);
  p.cert = load_certificate(p.orig, p.trans, f.certificate);
  p.report = crnt::analyze_resolvability(p.orig, p.trans, p.cert);
  return p;
}

int cmd_check(const std::string& orig_path, const std::string& trans_path, const Flags& f) {
  Pair p = load_pair(orig_path, trans_path, f);
  crnt::CertificateVerdict cv = crnt::check_certificate(p.orig, p.trans, p.cert);
  bool ok = cv.valid() && crnt::is_weakly_reversible(p.trans.base) && (p.report.proper() || p.report.resolvable());
  if (f.format == "json") {
    json doc;
    doc["certificate_valid"] = cv.valid();
    doc["certificate_violations"] = cv.violations;
    doc["kind"] = crnt::classify(p.cert) == crnt::TranslationKind::kProper ? "proper" : "improper";
    doc["pass"] = ok;
    doc["report"] = json::parse(crnt::write_report(p.orig, p.trans, p.cert, p.report, ReportFormat::kJson));
    std::cout << crnt::dump_json(doc);
  } else {
    std::cout << "certificate: " << (cv.valid() ? "valid" : "invalid") << "\n";
    for (const auto& v : cv.violations) std::cout << "violation: " << v << "\n";
    std::cout << "kind: " << (crnt::classify(p.cert) == crnt::TranslationKind::kProper ? "proper" : "improper")
              << "\n";
    std::cout << crnt::write_report(p.orig, p.trans, p.cert, p.report, ReportFormat::kText);
    std::cout << "verdict: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kOk : kInfeasible;
}

int cmd_resolve(const std::string& orig_path, const std::string& trans_path, const Flags& f) {
  Pair p = load_pair(orig_path, trans_path, f);
  const auto& rep = p.report;
  bool ok = rep.proper() || rep.resolvable();
  if (f.format == "json") {
    json doc;
    doc["resolvable"] = ok;
    json tc = json::array();
    for (const auto& k : rep.tree_constants) tc.push_back(crnt::format_rational(k));
    doc["tree_constants"] = tc;
    json w = json::array();
    json factors = json::object();
    if (rep.rescaling) {
      for (const auto& k : rep.rescaling->weights) w.push_back(crnt::format_rational(k));
      for (const auto& [i, s] : rep.rescaling->scale_factors) factors[std::to_string(i + 1)] = crnt::format_rational(s);
      doc["rescaling_exact"] = rep.rescaling->exact;
    }
    doc["rescaled_weights"] = w;
    doc["scale_factors"] = factors;
    std::cout << crnt::dump_json(doc);
  } else {
    std::cout << "resolvable: " << (ok ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < rep.tree_constants.size(); ++i)
      std::cout << "K[" << i + 1 << "] = " << crnt::format_rational(rep.tree_constants[i]) << "\n";
    if (rep.rescaling) {
      for (const auto& [i, s] : rep.rescaling->scale_factors)
        std::cout << "scale_factor[" << i + 1 << "] = " << crnt::format_rational(s) << "\n";
      const auto& rx = p.trans.base.reactions;
      for (std::size_t r = 0; r < rx.size(); ++r)
        std::cout << "k~(" << rx[r].source + 1 << "," << rx[r].target + 1
                  << ") = " << crnt::format_rational(rep.rescaling->weights[r])
                  << "  b~ = " << crnt::format_rational(rx[r].weight) << "\n";
    }
  }
  return ok ? kOk : kInfeasible;
}

int cmd_verify(const std::string& orig_path, const std::string& trans_path, const Flags& f) {
  Pair p = load_pair(orig_path, trans_path, f);
  crnt::GeneralizedNetwork gen = p.trans;
  bool rescaled = false;
  if (!f.no_rescale && p.report.rescaling) {
    for (std::size_t r = 0; r < gen.base.reactions.size(); ++r)
      gen.base.reactions[r].weight = p.report.rescaling->weights[r];
    rescaled = true;
  }
  auto points = crnt::log_uniform_points(p.orig.num_species(), 100, crnt::derive_seed(f.seed, 2));
  double dyn = crnt::check_dynamical_equivalence(p.orig, gen, points);
  crnt::EquivalenceVerdict v = crnt::check_steady_state_equivalence(p.orig, gen, f.trials, f.seed);
  if (f.format == "json") {
    json doc;
    doc["rescaled"] = rescaled;
    doc["dynamical_deviation"] = dyn;
    doc["tolerance"] = v.tolerance;
    doc["passed"] = v.passed;
    doc["failed"] = v.failed;
    doc["errored"] = v.errored;
    doc["redrawn"] = v.redrawn;
    doc["max_residual"] = v.max_residual;
    doc["equivalent"] = v.equivalent();
    json trials = json::array();
    for (const auto& t : v.trials)
      trials.push_back({{"forward_found", t.forward_found},
                        {"forward_residual", t.forward_residual},
                        {"backward_found", t.backward_found},
                        {"backward_residual", t.backward_residual},
                        {"message", t.message}});
    doc["trials"] = trials;
    std::cout << crnt::dump_json(doc);
  } else {
    std::cout << "weights: " << (rescaled ? "rescaled" : "translation") << "\n";
    std::printf("dynamical deviation (100 points): %.3e\n", dyn);
    std::printf("%5s  %12s  %12s  %s\n", "trial", "forward", "backward", "status");
    for (std::size_t i = 0; i < v.trials.size(); ++i) {
      const auto& t = v.trials[i];
      bool pass = t.forward_found && t.backward_found && t.forward_residual <= v.tolerance &&
                  t.backward_residual <= v.tolerance;
      std::printf("%5zu  %12.3e  %12.3e  %s%s%s\n", i + 1, t.forward_residual, t.backward_residual,
                  pass ? "pass" : "fail", t.message.empty() ? "" : " ", t.message.c_str());
    }
    std::printf("passed %d failed %d errored %d redrawn %d max_residual %.3e tolerance %.0e\n", v.passed, v.failed,
                v.errored, v.redrawn, v.max_residual, v.tolerance);
    std::cout << "steady-state equivalence: " << (v.equivalent() ? "pass" : "fail") << "\n";
  }
  return v.equivalent() ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crnt: network translation and steady-state resolvability"};
  app.require_subcommand(1);
  Flags f;
  std::string input, translation;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--threads", f.threads, "Worker threads (the solver runs single-threaded)")
        ->check(CLI::PositiveNumber);
  };
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("original", input, "Original network (.crn)")->required();
    sub->add_option("translation", translation, "Translated network (.gcrn)")->required();
    sub->add_option("--certificate", f.certificate, "Certificate JSON");
    add_common(sub);
  };

  auto* analyze = app.add_subcommand("analyze", "Structural analysis of a .crn or .gcrn file");
  analyze->add_option("network", input, "Network file")->required();
  add_common(analyze);

  auto* translate = app.add_subcommand("translate", "Search for a weakly reversible translation");
  translate->add_option("network", input, "Network file (.crn)")->required();
  translate->add_option("--epsilon", f.epsilon, "Lower bound on positive weights")->check(CLI::Range(1e-9, 1 - 1e-9));
  translate->add_option("--ell-star", f.ell_star, "Maximum linkage classes of the auxiliary network")
      ->check(CLI::PositiveNumber);
  translate->add_flag("--proper-only", f.proper_only, "Forbid merging source complexes");
  translate->add_option("--objective", f.objective, "Objective")->check(CLI::IsMember({"mindef", "minc", "lex"}));
  auto* cand = translate->add_option("--candidates", f.candidates, "Candidate complex file");
  translate->add_option("--auto-candidates", f.auto_depth, "Generated candidate depth")
      ->check(CLI::NonNegativeNumber)
      ->excludes(cand);
  translate->add_option("--solver", f.solver, "internal solves; lp-export writes the model")
      ->check(CLI::IsMember({"internal", "lp-export"}));
  translate->add_flag("--random-weights", f.random_weights, "Redraw weights uniformly in [sqrt(eps), 1/sqrt(eps)]");
  translate->add_option("--output-dir", f.output_dir, "Directory for the written files");
  translate->add_option("--max-seconds", f.max_seconds, "Solver time budget")->check(CLI::PositiveNumber);
  translate->add_option("--max-nodes", f.max_nodes, "Solver node budget")->check(CLI::PositiveNumber);
  translate->add_flag("--verbose", f.verbose, "Node log and statistics on stderr");
  add_common(translate);

  auto* check = app.add_subcommand("check", "Certificate and resolvability conditions");
  add_pair(check);
  auto* resolve = app.add_subcommand("resolve", "Tree constants and rescaled weights");
  add_pair(resolve);
  auto* verify = app.add_subcommand("verify", "Numerical steady-state equivalence");
  add_pair(verify);
  verify->add_option("--trials", f.trials, "Steady-state trials")->check(CLI::PositiveNumber);
  verify->add_flag("--no-rescale", f.no_rescale, "Use the translation weights as given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*analyze) return cmd_analyze(input, f);
    if (*translate) return cmd_translate(input, f);
    if (*check) return cmd_check(input, translation, f);
    if (*resolve) return cmd_resolve(input, translation, f);
    if (*verify) return cmd_verify(input, translation, f);
  } catch (const crnt::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParse;
  } catch (const crnt::MilpError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kNumeric;
  }
  return kOk;
}
