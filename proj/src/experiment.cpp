#include "rigidity/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>

#include "rigidity/checks.hpp"
#include "rigidity/hypgeom.hpp"
#include "rigidity/spectral.hpp"
#include "rigidity/weyl.hpp"

namespace rigidity {

std::string criterion_key(int id) {
  static const char* names[] = {"fuchsian_ladder",   "klein_identities", "weyl_table",          "chamber_maxima",
                                "cross_ratio_suite", "rank_detection",   "asymptotic_rates",    "cocycle_identities",
                                "desk_inequalities", "oracle_equivalence"};
  if (id < 1 || id > 10) throw std::out_of_range("criterion_key: id must be in 1..10");
  return "C" + std::to_string(id) + "." + names[id - 1];
}

Representation build_geometry(const GeometryConfig& g, std::optional<Representation>* base) {
  if (g.kind == "psl2") {
    Representation rep2 = psl2_schottky(g.angles, g.lengths, "psl2");
    Representation geo = klein_from_psl2(rep2);
    if (base) *base = std::move(rep2);
    return geo;
  }
  if (!g.axes.empty()) {
    std::vector<SchottkyGenerator> gens;
    for (std::size_t i = 0; i < g.axes.size(); ++i) {
      Vec axis = Eigen::Map<const Vec>(g.axes[i].data(), static_cast<Eigen::Index>(g.axes[i].size()));
      if (axis.norm() == 0.0) throw ConfigError("geometry.axes: zero axis");
      gens.push_back({unit(axis), g.lengths[i], g.twists.empty() ? 0.0 : g.twists[i]});
    }
    return klein_schottky(g.k, gens, "klein" + std::to_string(g.k)).rep;
  }
  return random_klein_schottky(g.k, g.rank, g.length, g.seed).rep;
}

Representation build_recipe(const Recipe& r, const Experiment& partial, int adjoint_sample_len) {
  switch (r.kind) {
    case Recipe::Kind::Klein: return partial.geo;
    case Recipe::Kind::SymPower:
      if (!partial.base) throw ConfigError("sym_power needs psl2 geometry");
      return sym_power_rep(*partial.base, r.n);
    case Recipe::Kind::Exterior: {
      const Representation inner = build_recipe(*r.child, partial, adjoint_sample_len);
      if (r.n < 1 || r.n >= inner.dim())
        throw ConfigError("exterior(" + std::to_string(r.n) + ") of a dimension " + std::to_string(inner.dim()) +
                          " representation");
      return exterior_power_rep(inner, r.n);
    }
    case Recipe::Kind::Adjoint: {
      const Representation inner = build_recipe(*r.child, partial, adjoint_sample_len);
      return adjoint_irreducible(inner, enumerate_conjugacy_classes(inner.rank(), adjoint_sample_len)).rep;
    }
    case Recipe::Kind::Perturb:
      return perturb(build_recipe(*r.child, partial, adjoint_sample_len), r.eps, r.seed);
  }
  throw std::logic_error("build_recipe: unknown recipe");
}

Experiment build_experiment(const ExperimentConfig& c) {
  Experiment e;
  e.geo = build_geometry(c.geometry, &e.base);
  e.lin = build_recipe(c.recipe, e, std::min(c.sample_len, 5));
  if (e.lin.rank() != e.geo.rank()) throw ConfigError("representation and geometry have different ranks");
  return e;
}

namespace {

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  nlohmann::json stages = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json ledger = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  bool ok = true;

  // Runs f unless a dependency did not complete. Ledger keys owned by the
  // stage are marked skipped or error when f does not run to completion.
  template <class F>
  bool stage(const std::string& name, const std::vector<std::string>& deps, const std::vector<std::string>& keys, F f) {
    for (const auto& d : deps) {
      if (stages[d]["status"] != "ok") {
        stages[name] = {{"status", "skipped"}, {"reason", "dependency '" + d + "' did not complete"}};
        for (const auto& k : keys) ledger[k] = {{"status", "skipped"}, {"detail", "stage '" + name + "' skipped"}};
        return false;
      }
    }
    const auto t0 = Clock::now();
    try {
      f();
      stages[name] = {{"status", "ok"}};
    } catch (const NotProximalError& e) {
      fail_stage(name, keys, e.what());
      stages[name]["word"] = e.word().str();
    } catch (const std::exception& e) {
      fail_stage(name, keys, e.what());
    }
    timings[name] = std::chrono::duration<double>(Clock::now() - t0).count();
    return stages[name]["status"] == "ok";
  }

  void record(const std::string& key, bool passed, nlohmann::json metrics) {
    ledger[key] = {{"status", passed ? "pass" : "fail"}, {"metrics", std::move(metrics)}};
    if (!passed) ok = false;
  }

 private:
  void fail_stage(const std::string& name, const std::vector<std::string>& keys, const std::string& what) {
    ok = false;
    stages[name] = {{"status", "error"}, {"error", what}};
    for (const auto& k : keys)
      if (!ledger.contains(k)) ledger[k] = {{"status", "error"}, {"detail", what}};
  }
};

nlohmann::json summary(const PeriodSpectrum& ps) {
  return {{"functional", ps.functional_label},
          {"count", ps.size()},
          {"min", ps.entries.front().value},
          {"max", ps.entries.back().value}};
}

}  // namespace

RunReport run(const ExperimentConfig& c) {
  RunReport out;
  Runner st;
  Experiment ex;
  std::vector<Word> classes, sample_words;
  std::optional<PeriodSpectrum> base, spec, hilb;
  std::optional<SampleSet> samples;
  const auto t_start = Clock::now();

  st.stage("build", {}, {}, [&] {
    ex = build_experiment(c);
    st.results["representation"] = {{"label", ex.lin.label()}, {"dim", ex.lin.dim()}, {"rank", ex.lin.rank()}};
    const auto rs = root_system(RootKind::A, ex.lin.dim() - 1);
    st.results["weyl"] = {{"kind", rs.name()}, {"ratio_bound", to_string(ratio_bound(rs))}};
  });
  st.stage("enumerate", {"build"}, {}, [&] {
    classes = enumerate_conjugacy_classes(ex.lin.rank(), c.max_len);
    sample_words = enumerate_conjugacy_classes(ex.lin.rank(), c.sample_len);
    st.results["classes"] = {{"max_len", c.max_len}, {"count", classes.size()}, {"sample_words", sample_words.size()}};
  });
  st.stage("proximality", {"enumerate"}, {}, [&] {
    for (const Word& w : classes) {
      if (!proximality_data(evaluate(ex.lin, w)) || !proximality_data(evaluate(ex.lin, w.inverse())))
        throw NotProximalError("image of " + w.str() + " is not proximal in both directions", w);
    }
    st.results["proximality"] = {{"checked", classes.size()}};
  });

  const bool ladder = ex.base && c.recipe.kind == Recipe::Kind::SymPower && c.recipe.n >= 3;
  const bool klein = c.recipe.kind == Recipe::Kind::Klein;
  std::vector<std::string> identity_keys;
  if (ladder) identity_keys.push_back(criterion_key(1));
  if (klein) identity_keys.push_back(criterion_key(2));
  if (!identity_keys.empty()) {
    st.stage("identities", {"proximality"}, identity_keys, [&] {
      if (ladder) {
        const auto l = fuchsian_ladder_check(*ex.base, c.recipe.n, c.max_len, c.tol.ladder);
        st.results["ladder"] = to_json(l);
        st.record(criterion_key(1), l.passed, to_json(l));
      }
      if (klein) {
        const auto k = klein_identity_check(ex.geo, c.max_len, std::min(c.sample_len, 5), c.tol.klein);
        st.results["klein_identities"] = to_json(k);
        st.record(criterion_key(2), k.passed, to_json(k));
      }
    });
  }

  st.stage("spectra", {"proximality"}, {}, [&] {
    base = period_spectrum(ex.geo, {Functional::TranslationLength, {}}, classes, c.max_len);
    spec = period_spectrum(ex.lin, {Functional::Lambda1, {}}, classes, c.max_len);
    hilb = period_spectrum(ex.lin, {Functional::Hilbert, {}}, classes, c.max_len);
    st.results["spectra"] = {{"base", summary(*base)}, {"lambda1", summary(*spec)}, {"hilbert", summary(*hilb)}};
  });
  st.stage("entropy", {"spectra"}, {}, [&] {
    const auto hg = growth_rate(*base, c.window);
    const auto hr = growth_rate(*spec, c.window);
    const auto hh = growth_rate(*hilb, c.window);
    st.results["entropy"] = {{"window", {c.window.q_lo, c.window.q_hi}},
                             {"h_gamma", to_json(hg)},
                             {"h_rho", to_json(hr)},
                             {"hilbert", to_json(hh)},
                             {"ratio_spectral", entropy_ratio(*spec, *base, c.window)},
                             {"ratio_hilbert", entropy_ratio(*hilb, *base, c.window)}};
  });
  st.stage("samples", {"proximality"}, {}, [&] {
    samples = limit_samples(ex.geo, ex.lin, sample_words);
    st.results["samples"] = {{"count", samples->size()}, {"words", sample_words.size()}};
  });
  st.stage("crossratio", {"samples"}, {criterion_key(5)}, [&] {
    SuiteOptions o;
    o.tuples = c.checks.tuples;
    o.seed = c.seed;
    o.axiom_tol = c.tol.axioms;
    o.gromov_tol = c.tol.gromov;
    o.adjoint_tol = c.tol.adjoint;
    o.min_pairing = c.tol.min_pairing;
    o.adjoint = c.checks.adjoint;
    o.adjoint_sample_len = std::min(c.sample_len, 5);
    o.nonnegative = c.checks.nonnegative;
    const auto suite = cross_ratio_suite(ex.geo, ex.lin, *samples, o);
    st.results["crossratio"] = to_json(suite);
    st.record(criterion_key(5), suite.passed, to_json(suite));
  });
  std::vector<std::string> rank_keys;
  if (c.checks.expected_rank) rank_keys.push_back(criterion_key(6));
  st.stage("rank", {"samples"}, rank_keys, [&] {
    const int p_max = c.checks.rank_p_max > 0 ? c.checks.rank_p_max : ex.lin.dim() + 2;
    const auto rr = rank_estimate(cross_ratio, *samples, p_max, c.checks.rank_trials, c.tol.rank, c.seed,
                                  c.tol.rank_min_pairing);
    nlohmann::json j = {{"p_max", p_max}, {"max_scaled_chi", rr.max_scaled_chi}};
    j["estimate"] = rr.rank ? nlohmann::json(*rr.rank) : nlohmann::json("> " + std::to_string(p_max));
    if (c.checks.expected_rank) j["expected"] = *c.checks.expected_rank;
    st.results["rank"] = j;
    if (c.checks.expected_rank) st.record(criterion_key(6), rr.rank == c.checks.expected_rank, j);
  });
  st.stage("holder", {"samples"}, {}, [&] {
    const auto pairs = holder_pairs(*samples, HypPoint::origin(ex.geo.dim() - 1), c.checks.holder_pairs, c.seed);
    const auto fit = holder_exponent_fit(pairs);
    st.results["holder"] = {{"alpha_hat", fit.alpha},
                            {"insufficient_spread", fit.insufficient_spread},
                            {"bins", fit.bins.size()},
                            {"pairs", pairs.size()}};
  });
  st.stage("cocycles", {"samples"}, {criterion_key(8)}, [&] {
    const auto cc = cocycle_check(ex.geo, ex.lin, *samples, c.checks.cocycle_cases, c.seed, c.tol.cocycle);
    st.results["cocycles"] = to_json(cc);
    st.record(criterion_key(8), cc.passed, to_json(cc));
  });
  st.stage("inequalities", {"spectra"}, {criterion_key(9)}, [&] {
    const auto di = desk_inequalities(ex.geo, ex.lin, classes, c.tol.inequality_slack, c.window);
    st.results["inequalities"] = to_json(di);
    st.record(criterion_key(9), di.passed, to_json(di));
  });
  st.timings["total"] = std::chrono::duration<double>(Clock::now() - t_start).count();

  out.ok = st.ok;
  out.json = {{"schema_version", kSchemaVersion},
              {"config", c.echo},
              {"stages", st.stages},
              {"results", st.results},
              {"ledger", st.ledger},
              {"status", st.ok ? "pass" : "fail"},
              {"timings", st.timings}};
  out.base_spectrum = std::move(base);
  out.lambda1_spectrum = std::move(spec);
  out.samples = std::move(samples);
  return out;
}

void write_outputs(const RunReport& r, const ExperimentConfig& c, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);
  const std::string stem = c.name.empty() ? "run" : c.name;
  std::ofstream(root / (stem + ".report.json")) << r.json.dump(2) << '\n';
  if (r.base_spectrum) {
    std::ofstream f(root / (stem + ".spectrum_base.csv"));
    write_spectrum_csv(f, *r.base_spectrum);
  }
  if (r.lambda1_spectrum) {
    std::ofstream f(root / (stem + ".spectrum_lambda1.csv"));
    write_spectrum_csv(f, *r.lambda1_spectrum);
  }
  if (r.samples) {
    std::ofstream f(root / (stem + ".samples.csv"));
    write_samples_csv(f, *r.samples);
  }
}

}  // namespace rigidity
