#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidity/acceptance.hpp"
#include "rigidity/checks.hpp"
#include "rigidity/experiment.hpp"
#include "rigidity/fixtures.hpp"
#include "rigidity/weyl.hpp"

#ifndef RIGIDITY_CONFIG_DIR
#define RIGIDITY_CONFIG_DIR "configs"
#endif

using namespace rigidity;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  int max_len = 8;
  std::string out;
  std::string format = "csv";
};

struct RepOptions {
  std::string kind = "fuchsian";
  int d = 3;
  int k = 2;
  int sample_len = 6;
};

struct Pair {
  Representation geo, lin;
};

Pair build_pair(const RepOptions& o) {
  if (o.kind == "fuchsian") {
    if (o.d < 2) throw CLI::ValidationError("--d", "must be at least 2");
    const auto rep2 = standard_fuchsian();
    return {klein_from_psl2(rep2), o.d == 2 ? rep2 : sym_power_rep(rep2, o.d)};
  }
  if (o.kind == "klein") {
    if (o.k < 2) throw CLI::ValidationError("--k", "must be at least 2");
    const auto r = standard_klein(o.k).rep;
    return {r, r};
  }
  const auto r = planar_klein_in_h3().rep;
  return {r, r};
}

void add_rep_options(CLI::App* sub, RepOptions& o) {
  sub->add_option("--kind", o.kind, "fuchsian (tau_d of a PSL(2,R) Schottky group), klein (Schottky group in SO(1,k)) "
                                    "or planar (SO(1,2) inside SO(1,3))")
      ->check(CLI::IsMember({"fuchsian", "klein", "planar"}))
      ->capture_default_str();
  sub->add_option("--d", o.d, "dimension of the symmetric power for fuchsian")->capture_default_str();
  sub->add_option("--k", o.k, "hyperbolic dimension for klein")->capture_default_str();
}

// Writes to --out when given, stdout otherwise.
void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot write '" + c.out + "'");
  f << text;
}

FunctionalSpec functional_from(const std::string& name) {
  if (name == "lambda1") return {Functional::Lambda1, {}};
  if (name == "hilbert") return {Functional::Hilbert, {}};
  return {Functional::TranslationLength, {}};
}

int cmd_enumerate(const Common& c, int rank) {
  const auto classes = enumerate_conjugacy_classes(rank, c.max_len);
  std::ostringstream os;
  if (c.format == "json") {
    json words = json::array();
    for (const auto& w : classes) words.push_back(w.str());
    os << json{{"rank", rank}, {"max_len", c.max_len}, {"count", classes.size()}, {"classes", words}}.dump(2) << "\n";
  } else {
    os << "length,word\n";
    for (const auto& w : classes) os << w.size() << "," << w.str() << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_spectrum(const Common& c, const RepOptions& ro, const std::string& functional) {
  const auto p = build_pair(ro);
  const auto& rep = functional == "translation" ? p.geo : p.lin;
  const auto ps = period_spectrum(rep, functional_from(functional), c.max_len);
  std::ostringstream os;
  if (c.format == "json") {
    json entries = json::array();
    for (const auto& e : ps.entries) entries.push_back({{"word", e.word.str()}, {"value", e.value}});
    os << json{{"functional", ps.functional_label}, {"max_len", ps.max_len}, {"entries", entries}}.dump(2) << "\n";
  } else {
    write_spectrum_csv(os, ps);
  }
  emit(c, os.str());
  return 0;
}

int cmd_entropy(const Common& c, const RepOptions& ro, const WindowPolicy& w) {
  const auto p = build_pair(ro);
  const auto classes = enumerate_conjugacy_classes(p.lin.rank(), c.max_len);
  const auto base = period_spectrum(p.geo, {Functional::TranslationLength, {}}, classes, c.max_len);
  const auto spec = period_spectrum(p.lin, {Functional::Lambda1, {}}, classes, c.max_len);
  const auto hilb = period_spectrum(p.lin, {Functional::Hilbert, {}}, classes, c.max_len);
  const auto hb = growth_rate(base, w), hs = growth_rate(spec, w), hh = growth_rate(hilb, w);
  std::ostringstream os;
  if (c.format == "json") {
    os << json{{"h_gamma", to_json(hb)},
               {"h_spectral", to_json(hs)},
               {"h_hilbert", to_json(hh)},
               {"ratio_spectral", hs.h / hb.h},
               {"ratio_hilbert", hh.h / hb.h},
               {"window", {w.q_lo, w.q_hi}}}
              .dump(2)
       << "\n";
  } else {
    os << std::setprecision(12) << "functional,h,t_lo,t_hi,residual,count,ratio_to_base\n";
    for (const auto& [name, g] : {std::pair{"translation", hb}, {"lambda1", hs}, {"hilbert", hh}})
      os << name << "," << g.h << "," << g.t_lo << "," << g.t_hi << "," << g.residual << "," << g.count_at_hi << ","
         << g.h / hb.h << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_crossratio(const Common& c, const RepOptions& ro, std::size_t tuples, bool adjoint, bool nonnegative,
                   const std::string& samples_out) {
  const auto p = build_pair(ro);
  const auto samples = limit_samples(p.geo, p.lin, enumerate_conjugacy_classes(p.lin.rank(), ro.sample_len));
  SuiteOptions opt;
  opt.tuples = tuples;
  opt.seed = c.seed;
  opt.adjoint = adjoint;
  opt.nonnegative = nonnegative;
  const auto s = cross_ratio_suite(p.geo, p.lin, samples, opt);
  if (!samples_out.empty()) {
    std::ofstream f(samples_out);
    if (!f) throw std::runtime_error("cannot write '" + samples_out + "'");
    write_samples_csv(f, samples);
  }
  std::ostringstream os;
  if (c.format == "json") {
    os << to_json(s).dump(2) << "\n";
  } else {
    os << "check,value,passed\n";
    os << "axioms," << s.axioms.worst() << "," << s.axioms.passed() << "\n";
    os << "gromov," << s.gromov_worst << "," << (s.gromov_worst <= opt.gromov_tol) << "\n";
    if (s.adjoint_worst) os << "adjoint," << *s.adjoint_worst << "," << (*s.adjoint_worst <= opt.adjoint_tol) << "\n";
    if (s.min_value) os << "min_value," << *s.min_value << "," << (*s.min_value >= 0.0) << "\n";
  }
  emit(c, os.str());
  return s.passed ? 0 : 1;
}

int cmd_rank(const Common& c, const RepOptions& ro, int trials) {
  const auto p = build_pair(ro);
  const auto samples = limit_samples(p.geo, p.lin, enumerate_conjugacy_classes(p.lin.rank(), ro.sample_len));
  const auto r = rank_estimate(cross_ratio, samples, p.lin.dim() + 2, trials, kRankTol, c.seed);
  std::ostringstream os;
  if (c.format == "json") {
    os << json{{"rank", r.rank ? json(*r.rank) : json(nullptr)}, {"max_scaled_chi", r.max_scaled_chi}}.dump(2) << "\n";
  } else {
    os << (r.rank ? std::to_string(*r.rank) : ">" + std::to_string(p.lin.dim() + 2)) << "\n";
  }
  emit(c, os.str());
  return r.rank ? 0 : 1;
}

int cmd_holder(const Common& c, const RepOptions& ro, std::size_t pairs) {
  const auto p = build_pair(ro);
  const auto classes = enumerate_conjugacy_classes(p.lin.rank(), c.max_len);
  const double ub = holder_upper_bound(p.geo, p.lin, classes);
  const double ub_flag = holder_upper_bound_flag(p.geo, p.lin, classes);
  const auto samples = limit_samples(p.geo, p.lin, enumerate_conjugacy_classes(p.lin.rank(), ro.sample_len));
  const auto fit = holder_exponent_fit(holder_pairs(samples, HypPoint::origin(p.geo.dim() - 1), pairs, c.seed));
  std::ostringstream os;
  if (c.format == "json") {
    json bins = json::array();
    for (const auto& b : fit.bins) bins.push_back({{"x", b.x}, {"envelope", b.envelope}, {"count", b.count}});
    os << json{{"alpha_upper_bound", ub},
               {"alpha_upper_bound_flag", ub_flag},
               {"alpha_fit", fit.alpha},
               {"insufficient_spread", fit.insufficient_spread},
               {"bins", bins}}
              .dump(2)
       << "\n";
  } else {
    os << std::setprecision(12) << "alpha_upper_bound,alpha_upper_bound_flag,alpha_fit,insufficient_spread\n"
       << ub << "," << ub_flag << "," << fit.alpha << "," << fit.insufficient_spread << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_weyl_table(const Common& c) {
  std::vector<RootSystem> table;
  for (int d = 3; d <= 10; ++d) table.push_back(root_system(RootKind::A, d - 1));
  for (int n = 2; n <= 6; ++n) table.push_back(root_system(RootKind::C, n));
  for (int n = 2; n <= 6; ++n) table.push_back(root_system(RootKind::B, n));
  table.push_back(root_system(RootKind::G2, 2));
  std::ostringstream os;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& rs : table)
      rows.push_back({{"kind", rs.name()},
                      {"parameter", rs.parameter},
                      {"d", rs.ambient_d},
                      {"barycenter", to_string(barycenter(rs))},
                      {"ratio_bound", to_string(ratio_bound(rs))}});
    os << rows.dump(2) << "\n";
  } else {
    os << "kind,parameter,d,barycenter,ratio_bound\n";
    for (const auto& rs : table)
      os << rs.name() << "," << rs.parameter << "," << rs.ambient_d << "," << to_string(barycenter(rs)) << ","
         << to_string(ratio_bound(rs)) << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_verify(const Common& c, const std::vector<int>& only, const std::string& config_dir) {
  AcceptanceOptions opts{config_dir};
  std::vector<CriterionResult> results;
  auto report = [&](const CriterionResult& r) {
    std::cout << format_line(r) << std::endl;
    results.push_back(r);
  };
  if (only.empty()) {
    run_acceptance(opts, report);
  } else {
    for (int id : only) report(run_criterion(id, opts));
  }
  bool ok = true;
  json j = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    j.push_back({{"key", r.key}, {"passed", r.passed}, {"detail", r.detail}, {"metrics", r.metrics}, {"seconds", r.seconds}});
  }
  if (!c.out.empty()) emit(c, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_run(const Common& c, const std::string& path, bool seed_set, bool max_len_set) {
  auto cfg = load_config(path);
  if (seed_set) cfg.seed = c.seed;
  if (max_len_set) cfg.max_len = c.max_len;
  const auto r = run(cfg);
  const std::string dir = !c.out.empty() ? c.out : (!cfg.output_dir.empty() ? cfg.output_dir : ".");
  std::filesystem::create_directories(dir);
  write_outputs(r, cfg, dir);
  for (const auto& [key, entry] : r.json["ledger"].items())
    std::cout << entry.value("status", std::string("?")) << " " << key << "\n";
  std::cout << "status: " << (r.ok ? "pass" : "fail") << "\n";
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of entropy rigidity for convex and hyperconvex representations of free groups."};
  app.require_subcommand(1);
  Common c;
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--max-len", c.max_len, "maximal word length of enumerated conjugacy classes")->capture_default_str();
  app.add_option("--out", c.out, "output file (output directory for run)");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.fallthrough();

  int rank = 2;
  auto* enumerate = app.add_subcommand(
      "enumerate", "List one cyclically reduced representative per conjugacy class of the free group; these index "
                   "every period count.");
  enumerate->add_option("--rank", rank, "rank of the free group")->check(CLI::PositiveNumber)->capture_default_str();

  RepOptions ro;
  std::string functional = "lambda1";
  auto* spectrum = app.add_subcommand(
      "spectrum", "Period spectrum: lambda_1 of rho(g), the Hilbert length (lambda_1 - lambda_d)/2, or the "
                  "hyperbolic translation length, over all classes up to --max-len.");
  add_rep_options(spectrum, ro);
  spectrum->add_option("--functional", functional)
      ->check(CLI::IsMember({"lambda1", "hilbert", "translation"}))
      ->capture_default_str();

  WindowPolicy window;
  auto* entropy = app.add_subcommand(
      "entropy", "Exponential growth rates of the period counts of the group and of rho. For tau_d of a Fuchsian "
                 "group both the spectral and the Hilbert entropy equal 2/(d-1) times that of the group.");
  add_rep_options(entropy, ro);
  entropy->add_option("--q-lo", window.q_lo, "lower quantile of the fitting window")->capture_default_str();
  entropy->add_option("--q-hi", window.q_hi, "upper quantile of the fitting window")->capture_default_str();

  std::size_t tuples = 1000;
  bool adjoint = false, nonnegative = false;
  std::string samples_out;
  auto* crossratio = app.add_subcommand(
      "crossratio", "Projective cross ratio of limit points: its axioms, agreement with the cross ratio built from "
                    "Gromov products, and (with --adjoint) the identity relating it to the adjoint representation.");
  add_rep_options(crossratio, ro);
  crossratio->add_option("--tuples", tuples, "number of sampled 5-tuples")->capture_default_str();
  crossratio->add_option("--sample-len", ro.sample_len, "word length for limit samples")->capture_default_str();
  crossratio->add_flag("--adjoint", adjoint, "also check the adjoint identity (klein only)");
  crossratio->add_flag("--nonnegative", nonnegative, "also check that the cross ratio is nonnegative");
  crossratio->add_option("--samples", samples_out, "write the limit samples as CSV");

  int trials = 20;
  auto* rank_cmd = app.add_subcommand(
      "rank", "Rank of the cross ratio: least p for which the p x p determinants of cross ratios vanish, minus one. "
              "The Klein cross ratio of H^k has rank k+1 and tau_d has rank d.");
  add_rep_options(rank_cmd, ro);
  rank_cmd->add_option("--trials", trials, "random tuples per p")->capture_default_str();
  rank_cmd->add_option("--sample-len", ro.sample_len, "word length for limit samples")->capture_default_str();

  std::size_t pairs = 20000;
  auto* holder = app.add_subcommand(
      "holder", "Hoelder exponent of the limit map: the upper bound from the first eigenvalue gaps over translation "
                "lengths, and an empirical fit from pairs of limit points.");
  add_rep_options(holder, ro);
  holder->add_option("--pairs", pairs, "number of point pairs for the fit")->capture_default_str();
  holder->add_option("--sample-len", ro.sample_len, "word length for limit samples")->capture_default_str();

  auto* weyl = app.add_subcommand(
      "weyl-table", "For each root system, the barycenter of the Weyl chamber and the exact ratio alpha/chi at it, "
                    "which bounds the entropy of the highest-weight functional by the entropy of the group.");

  std::vector<int> only;
  std::string config_dir = RIGIDITY_CONFIG_DIR;
  auto* verify = app.add_subcommand("verify", "Run the full acceptance suite; one PASS/FAIL line per criterion.");
  verify->add_option("--only", only, "criterion ids to run")->check(CLI::Range(1, kCriteria));
  verify->add_option("--config-dir", config_dir, "directory of shipped configs")->capture_default_str();

  std::string config_path;
  auto* run_cmd = app.add_subcommand(
      "run", "Run an experiment from a config file: enumeration, spectra, entropies, limit samples, cross-ratio "
             "checks, Hoelder bounds and the entropy inequalities; writes a JSON report and CSVs.");
  run_cmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(c, rank);
    if (spectrum->parsed()) return cmd_spectrum(c, ro, functional);
    if (entropy->parsed()) return cmd_entropy(c, ro, window);
    if (crossratio->parsed()) return cmd_crossratio(c, ro, tuples, adjoint, nonnegative, samples_out);
    if (rank_cmd->parsed()) return cmd_rank(c, ro, trials);
    if (holder->parsed()) return cmd_holder(c, ro, pairs);
    if (weyl->parsed()) return cmd_weyl_table(c);
    if (verify->parsed()) return cmd_verify(c, only, config_dir);
    if (run_cmd->parsed())
      return cmd_run(c, config_path, app.count("--seed") > 0, app.count("--max-len") > 0);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
