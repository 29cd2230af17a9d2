#include "rigidity/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rigidity/hypgeom.hpp"
#include "rigidity/weyl.hpp"

namespace rigidity {

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

LadderCheck fuchsian_ladder_check(const Representation& rep2, int d, int max_len, double tol) {
  LadderCheck c;
  c.d = d;
  const Representation geo = klein_from_psl2(rep2);
  const Representation tau = sym_power_rep(rep2, d);
  const auto classes = enumerate_conjugacy_classes(rep2.rank(), max_len);
  c.classes = classes.size();
  for (const Word& w : classes) {
    const double len = translation_length(evaluate(geo, w));
    c.worst_relative = std::max(c.worst_relative, rel(word_lambda1(tau, w), 0.5 * (d - 1) * len));
  }
  const auto base = period_spectrum(geo, {Functional::TranslationLength, {}}, classes, max_len);
  const auto spec = period_spectrum(tau, {Functional::Lambda1, {}}, classes, max_len);
  const auto hilb = period_spectrum(tau, {Functional::Hilbert, {}}, classes, max_len);
  c.expected_ratio = 2.0 / (d - 1);
  c.ratio_spectral = entropy_ratio(spec, base);
  c.ratio_hilbert = entropy_ratio(hilb, base);
  c.passed = c.worst_relative <= tol && rel(c.ratio_spectral, c.expected_ratio) <= tol &&
             rel(c.ratio_hilbert, c.expected_ratio) <= tol;
  return c;
}

double axis_displacement(const ProjectiveMatrix& g) {
  const auto fp = boundary_fixed_points(g);
  const HypPoint p = geodesic_point(fp.repelling, fp.attracting, 0.0);
  // g is an isometry up to sign, so <p, g p> = +-cosh d without renormalizing g p.
  const Vec gp = g.matrix() * p.coords();
  return std::acosh(std::max(1.0, std::abs(lorentz(p.coords(), gp))));
}

KleinIdentityCheck klein_identity_check(const Representation& klein, int max_len, int adjoint_sample_len, double tol) {
  KleinIdentityCheck c;
  const auto classes = enumerate_conjugacy_classes(klein.rank(), max_len);
  const auto adj = adjoint_irreducible(klein, enumerate_conjugacy_classes(klein.rank(), adjoint_sample_len));
  c.classes = classes.size();
  c.adjoint_span = adj.span_dim;
  for (const Word& w : classes) {
    const double len = axis_displacement(evaluate(klein, w));
    c.worst_lambda1 = std::max(c.worst_lambda1, rel(word_lambda1(klein, w), len));
    c.worst_adjoint = std::max(c.worst_adjoint, rel(word_lambda1(adj.rep, w), 2.0 * len));
  }
  c.passed = c.worst_lambda1 <= tol && c.worst_adjoint <= tol;
  return c;
}

CrossRatioSuite cross_ratio_suite(const Representation& geo, const Representation& lin, const SampleSet& samples,
                                  const SuiteOptions& opts) {
  CrossRatioSuite s;
  s.samples = samples.size();
  const auto tuples = random_five_tuples(samples, opts.tuples, opts.seed, opts.min_pairing);
  s.axioms = axiom_check(cross_ratio, samples, tuples, opts.axiom_tol);
  bool ok = s.axioms.passed();
  double min_value = std::numeric_limits<double>::infinity();
  for (const auto& t : tuples) {
    const auto& x = samples[t[0]];
    const auto& y = samples[t[1]];
    const auto& z = samples[t[2]];
    const auto& u = samples[t[3]];
    const double b = cross_ratio(x, y, z, u);
    s.gromov_worst = std::max(s.gromov_worst, rel(cross_ratio_from_gromov(x, y, z, u), std::abs(b)));
    min_value = std::min(min_value, b);
  }
  ok = ok && s.gromov_worst <= opts.gromov_tol;
  if (opts.nonnegative) {
    s.min_value = min_value;
    ok = ok && min_value >= 0.0;
  }
  if (opts.adjoint) {
    std::vector<Word> words;
    for (const auto& x : samples) words.push_back(x.word);
    const auto adj = adjoint_irreducible(lin, enumerate_conjugacy_classes(lin.rank(), opts.adjoint_sample_len));
    const SampleSet eta = limit_samples(geo, adj.rep, words);
    if (eta.size() != samples.size()) throw std::logic_error("cross_ratio_suite: adjoint samples do not line up");
    const auto eta_tuples = random_five_tuples(eta, opts.tuples, opts.seed + 1, opts.min_pairing);
    double worst = 0.0;
    for (const auto& t : eta_tuples) {
      const auto& x = samples[t[0]];
      const auto& y = samples[t[1]];
      const auto& z = samples[t[2]];
      const auto& u = samples[t[3]];
      const double want = cross_ratio(x, y, z, u) * cross_ratio(y, x, u, z);
      worst = std::max(worst, rel(cross_ratio(eta[t[0]], eta[t[1]], eta[t[2]], eta[t[3]]), want));
    }
    s.adjoint_worst = worst;
    ok = ok && worst <= opts.adjoint_tol;
  }
  s.passed = ok;
  return s;
}

CocycleCheck cocycle_check(const Representation& geo, const Representation& lin, const SampleSet& samples,
                           std::size_t cases, std::uint64_t seed, double tol, double min_pairing) {
  if (samples.size() < 2) throw std::invalid_argument("cocycle_check: need at least two samples");
  CocycleCheck c;
  std::mt19937_64 rng(seed);
  const auto short_words = enumerate_conjugacy_classes(lin.rank(), 3);
  std::uniform_int_distribution<std::size_t> pick_word(0, short_words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_sample(0, samples.size() - 1);
  // g x is the attracting data of g h g^-1, transported from that of h.
  auto moved = [&](const Word& g, const LimitSample& x) {
    return LimitSample{apply(evaluate(geo, g).matrix(), x.base), canonical_sign(apply_word(lin, g, x.line)),
                       canonical_sign(apply_word_dual(lin, g, x.covector)), multiply(multiply(g, x.word), g.inverse())};
  };
  for (std::size_t attempt = 0; c.cocycle_cases < cases && attempt < 20 * cases; ++attempt) {
    const Word& g0 = short_words[pick_word(rng)];
    const Word& g1 = short_words[pick_word(rng)];
    const Word g01 = multiply(g0, g1);
    if (g01.empty()) continue;
    const auto& x = samples[pick_sample(rng)];
    const double lhs = cocycle_beta(lin, g01, x);
    const double rhs = cocycle_beta(lin, g0, moved(g1, x)) + cocycle_beta(lin, g1, x);
    c.cocycle_worst = std::max(c.cocycle_worst, std::abs(lhs - rhs));
    ++c.cocycle_cases;
  }
  for (std::size_t attempt = 0; c.equivariance_cases < cases && attempt < 20 * cases; ++attempt) {
    const Word& g = short_words[pick_word(rng)];
    const auto& x = samples[pick_sample(rng)];
    const auto& y = samples[pick_sample(rng)];
    if (same_base(x, y) || pairing_separation(x, y) < min_pairing) continue;
    const auto gx = moved(g, x);
    const auto gy = moved(g, y);
    if (pairing_separation(gx, gy) < min_pairing) continue;
    const double lhs = gromov_bracket(gx, gy) - gromov_bracket(x, y);
    const double rhs = -(cocycle_beta_bar(lin, g, x) + cocycle_beta(lin, g, y));
    c.equivariance_worst = std::max(c.equivariance_worst, std::abs(lhs - rhs));
    ++c.equivariance_cases;
  }
  c.passed = c.cocycle_cases == cases && c.equivariance_cases == cases && c.cocycle_worst <= tol &&
             c.equivariance_worst <= tol;
  return c;
}

DeskInequalities desk_inequalities(const Representation& geo, const Representation& lin,
                                   const std::vector<Word>& classes, double slack, const WindowPolicy& w) {
  DeskInequalities c;
  c.slack = slack;
  const int max_len = classes.empty() ? 0 : static_cast<int>(classes.back().size());
  c.alpha_ub = holder_upper_bound(geo, lin, classes);
  c.alpha_ub_flag = holder_upper_bound_flag(geo, lin, classes);
  c.h_gamma = growth_rate(period_spectrum(geo, {Functional::TranslationLength, {}}, classes, max_len), w).h;
  c.h_rho = growth_rate(period_spectrum(lin, {Functional::Lambda1, {}}, classes, max_len), w).h;
  c.hilbert = growth_rate(period_spectrum(lin, {Functional::Hilbert, {}}, classes, max_len), w).h;
  const auto bound = ratio_bound(root_system(RootKind::A, lin.dim() - 1));
  c.ratio_bound = boost::rational_cast<double>(bound);
  const double rhs = c.h_gamma * (1.0 + slack);
  c.entropy_bound_spectral = c.alpha_ub * c.h_rho <= rhs;
  c.entropy_bound_hilbert = c.alpha_ub * c.hilbert <= rhs;
  // chi = epsilon_1 in type A, so h_chi is the spectral entropy.
  c.flag_bound = c.alpha_ub_flag * c.h_rho <= c.ratio_bound * rhs;
  c.passed = c.entropy_bound_spectral && c.entropy_bound_hilbert && c.flag_bound;
  return c;
}

nlohmann::json to_json(const LadderCheck& c) {
  return {{"d", c.d},
          {"classes", c.classes},
          {"worst_relative", c.worst_relative},
          {"expected_ratio", c.expected_ratio},
          {"ratio_spectral", c.ratio_spectral},
          {"ratio_hilbert", c.ratio_hilbert},
          {"passed", c.passed}};
}

nlohmann::json to_json(const KleinIdentityCheck& c) {
  return {{"classes", c.classes},
          {"adjoint_span", c.adjoint_span},
          {"worst_lambda1", c.worst_lambda1},
          {"worst_adjoint", c.worst_adjoint},
          {"passed", c.passed}};
}

nlohmann::json to_json(const AxiomReport& r) {
  return {{"tuples", r.tuples},           {"tol", r.tol},
          {"symmetry", r.symmetry},       {"normalization", r.normalization},
          {"vanishing", r.vanishing},     {"cocycle_first", r.cocycle_first},
          {"cocycle_second", r.cocycle_second}, {"passed", r.passed()}};
}

nlohmann::json to_json(const CrossRatioSuite& c) {
  nlohmann::json j = {
      {"samples", c.samples}, {"axioms", to_json(c.axioms)}, {"gromov_worst", c.gromov_worst}, {"passed", c.passed}};
  if (c.adjoint_worst) j["adjoint_worst"] = *c.adjoint_worst;
  if (c.min_value) j["min_value"] = *c.min_value;
  return j;
}

nlohmann::json to_json(const CocycleCheck& c) {
  return {{"cocycle_cases", c.cocycle_cases},
          {"equivariance_cases", c.equivariance_cases},
          {"cocycle_worst", c.cocycle_worst},
          {"equivariance_worst", c.equivariance_worst},
          {"passed", c.passed}};
}

nlohmann::json to_json(const DeskInequalities& c) {
  return {{"alpha_ub", c.alpha_ub},
          {"alpha_ub_flag", c.alpha_ub_flag},
          {"h_rho", c.h_rho},
          {"hilbert_entropy", c.hilbert},
          {"h_gamma", c.h_gamma},
          {"ratio_bound", c.ratio_bound},
          {"slack", c.slack},
          {"entropy_bound_spectral", c.entropy_bound_spectral},
          {"entropy_bound_hilbert", c.entropy_bound_hilbert},
          {"flag_bound", c.flag_bound},
          {"passed", c.passed}};
}

}  // namespace rigidity
