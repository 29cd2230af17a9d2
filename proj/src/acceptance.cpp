#include "rigidity/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>

#include "rigidity/checks.hpp"
#include "rigidity/experiment.hpp"
#include "rigidity/fixtures.hpp"
#include "rigidity/hypgeom.hpp"
#include "rigidity/spectral.hpp"
#include "rigidity/weyl.hpp"

namespace rigidity {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

struct Outcome {
  bool passed = true;
  std::string detail;
  json metrics = json::object();
};

// ---------------------------------------------------------------------------

Outcome fuchsian_ladder() {
  Outcome o;
  const auto rep2 = standard_fuchsian();
  double worst = 0.0, worst_ratio = 0.0;
  for (int d = 3; d <= 8; ++d) {
    const auto c = fuchsian_ladder_check(rep2, d, 8, 1e-9);
    o.metrics["tau" + std::to_string(d)] = to_json(c);
    o.passed = o.passed && c.passed;
    worst = std::max(worst, c.worst_relative);
    worst_ratio = std::max({worst_ratio, std::abs(c.ratio_spectral - c.expected_ratio) / c.expected_ratio,
                            std::abs(c.ratio_hilbert - c.expected_ratio) / c.expected_ratio});
  }
  o.detail = "d=3..8, len<=8: max rel err lambda1 " + fmt(worst) + ", entropy ratio " + fmt(worst_ratio) +
             " (tol 1e-9)";
  return o;
}

Outcome klein_identities() {
  Outcome o;
  std::string parts;
  for (int k = 2; k <= 3; ++k) {
    const auto c = klein_identity_check(standard_klein(k).rep, 8, 5, 1e-8);
    o.metrics["H" + std::to_string(k)] = to_json(c);
    o.passed = o.passed && c.passed;
    parts += " H" + std::to_string(k) + ": lambda1 " + fmt(c.worst_lambda1) + ", adjoint " + fmt(c.worst_adjoint) + ";";
  }
  o.detail = "len<=8, rel err (tol 1e-8):" + parts;
  return o;
}

Outcome weyl_table() {
  Outcome o;
  auto check = [&](const RootSystem& rs, Rational want) {
    const auto per_root = ratio_bounds_per_root(rs);
    bool ok = true;
    for (const auto& q : per_root) ok = ok && q == want;
    // ratio_bound = 2/(d-1) for the defining dimension d.
    ok = ok && want == Rational(2, rs.ambient_d - 1);
    o.metrics[rs.name()] = {{"ratio_bound", to_string(per_root.front())},
                            {"expected", to_string(want)},
                            {"barycenter", to_string(barycenter(rs))},
                            {"d", rs.ambient_d}};
    if (!ok) o.passed = false;
  };
  for (int d = 3; d <= 10; ++d) check(root_system(RootKind::A, d - 1), Rational(2, d - 1));
  for (int n = 2; n <= 6; ++n) {
    check(root_system(RootKind::C, n), Rational(2, 2 * n - 1));
    check(root_system(RootKind::B, n), Rational(1, n));
  }
  check(root_system(RootKind::G2, 2), Rational(1, 3));
  o.detail = "A(2..9), B(2..6), C(2..6), G2 exact fractions, every simple root";
  return o;
}

Outcome chamber_maxima() {
  Outcome o;
  constexpr std::size_t kV = 1'000'000, kPhi = 10'000'000, kA2 = 1'000'000;
  constexpr double kRound = 1e-12;  // floating-point slack on the bound 1
  std::size_t v_violations = 0;
  for (int d = 3; d <= 10; ++d) {
    const auto rs = root_system(RootKind::A, d - 1);
    const auto m1 = chamber_max_sample([](const Vec& a) { return V1(a); }, rs, kV, 100 + d);
    const auto m2 = chamber_max_sample([](const Vec& a) { return V2(a); }, rs, kV, 200 + d);
    if (m1.value > 1.0 + kRound) ++v_violations;
    if (m2.value > 1.0 + kRound) ++v_violations;
    o.metrics["V"]["d" + std::to_string(d)] = {{"max_V1", m1.value}, {"max_V2", m2.value}};
  }
  double worst_angle = 0.0;
  std::size_t phi_violations = 0;
  for (const char* name : {"A(2)", "A(3)", "B(2)", "B(3)", "C(2)", "C(3)", "G2"}) {
    const auto rs = root_system(name);
    const Vec chi = to_double(rs.highest_weight);
    const Vec bar = to_double(barycenter(rs));
    const double bound = boost::rational_cast<double>(ratio_bound(rs));
    const auto m = chamber_max_sample([&](const Vec& a) { return Vphi(rs, chi, a); }, rs, kPhi, 300);
    const double angle = ray_angle(m.argmax, bar);
    worst_angle = std::max(worst_angle, angle);
    if (m.value > bound * (1.0 + kRound) || angle > 1e-2) ++phi_violations;
    o.metrics["Vphi"][name] = {{"max", m.value}, {"ratio_bound", bound}, {"argmax_angle", angle}};
  }
  std::size_t a2_violations = 0, a2_checked = 0;
  for (int d = 3; d <= 8; ++d) {
    const auto r = remark_a2_check(kA2, d, 400 + d);
    a2_violations += r.violations;
    a2_checked += r.checked;
    o.metrics["remark_a2"]["d" + std::to_string(d)] = {{"checked", r.checked}, {"violations", r.violations}};
  }
  o.passed = v_violations == 0 && phi_violations == 0 && a2_violations == 0 && a2_checked > 0;
  o.detail = "V1,V2<=1 d=3..10 (1e6 each): " + std::to_string(v_violations) + " violations; Vphi<=bound (1e7 each), max argmax angle " +
             fmt(worst_angle) + " (tol 1e-2); a2 remark " + std::to_string(a2_violations) + " violations in " +
             std::to_string(a2_checked) + " points";
  return o;
}

Outcome cross_ratio_suite_all() {
  Outcome o;
  const auto rep2 = standard_fuchsian();
  const auto fuchsian_geo = klein_from_psl2(rep2);
  const auto words = enumerate_conjugacy_classes(2, 6);
  struct Case {
    std::string name;
    Representation geo, lin;
    bool nonnegative;
  };
  const std::vector<Case> cases = {
      {"klein_H2", standard_klein(2).rep, standard_klein(2).rep, false},
      {"klein_H3", standard_klein(3).rep, standard_klein(3).rep, true},
      {"tau3", fuchsian_geo, sym_power_rep(rep2, 3), false},
      {"tau4", fuchsian_geo, sym_power_rep(rep2, 4), false},
  };
  double axioms = 0.0, gromov = 0.0, adjoint = 0.0;
  for (const auto& c : cases) {
    SuiteOptions opt;
    opt.tuples = 1000;
    opt.adjoint = true;
    opt.nonnegative = c.nonnegative;
    const auto samples = limit_samples(c.geo, c.lin, words);
    const auto s = cross_ratio_suite(c.geo, c.lin, samples, opt);
    o.metrics[c.name] = to_json(s);
    o.passed = o.passed && s.passed;
    axioms = std::max(axioms, s.axioms.worst());
    gromov = std::max(gromov, s.gromov_worst);
    adjoint = std::max(adjoint, s.adjoint_worst.value_or(0.0));
  }
  o.detail = "H2, H3, tau3, tau4 on 1000 tuples: axioms " + fmt(axioms) + " (1e-8), Gromov vs |b| " + fmt(gromov) +
             " (1e-9), adjoint identity " + fmt(adjoint) + " (1e-8), H3 min b " +
             fmt(o.metrics["klein_H3"]["min_value"].get<double>());
  return o;
}

Outcome rank_detection() {
  Outcome o;
  const auto rep2 = standard_fuchsian();
  const auto fuchsian_geo = klein_from_psl2(rep2);
  const auto words = enumerate_conjugacy_classes(2, 6);
  struct Case {
    std::string name;
    Representation geo, lin;
    int expected;
  };
  std::vector<Case> cases = {{"klein_H2", standard_klein(2).rep, standard_klein(2).rep, 3},
                             {"klein_H3", standard_klein(3).rep, standard_klein(3).rep, 4}};
  for (int d = 3; d <= 5; ++d) cases.push_back({"tau" + std::to_string(d), fuchsian_geo, sym_power_rep(rep2, d), d});
  cases.push_back({"so12_in_so13", planar_klein_in_h3().rep, planar_klein_in_h3().rep, 3});
  std::string parts;
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto samples = limit_samples(c.geo, c.lin, words);
    const auto rr = rank_estimate(cross_ratio, samples, c.lin.dim() + 2, 20, kRankTol, 1);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = rr.rank == c.expected && secs <= 30.0;
    o.passed = o.passed && ok;
    o.metrics[c.name] = {{"expected", c.expected},
                         {"estimate", rr.rank ? json(*rr.rank) : json(nullptr)},
                         {"max_scaled_chi", rr.max_scaled_chi},
                         {"seconds", secs}};
    parts += " " + c.name + "=" + (rr.rank ? std::to_string(*rr.rank) : std::string("none")) + "/" +
             std::to_string(c.expected);
  }
  o.detail = "estimate/expected:" + parts;
  return o;
}

Outcome asymptotic_rates() {
  Outcome o;
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int tried = 0, done = 0;
  while (done < 100) {
    ++tried;
    Mat m(5, 5);
    for (int i = 0; i < 25; ++i) m(i / 5, i % 5) = normal(rng);
    const ProjectiveMatrix pm(m);
    if (!proximality_data(pm)) continue;
    Vec v(5);
    for (int i = 0; i < 5; ++i) v(i) = normal(rng);
    const auto jp = jordan_projection(pm);
    const double want = jp[1] - jp[0];
    worst = std::max(worst, std::abs(benoist_rate(pm, v, 200).slope - want));
    ++done;
  }
  double worst_contraction = 0.0;
  for (int k = 2; k <= 3; ++k) {
    const auto geo = standard_klein(k).rep;
    for (const Word& w : enumerate_conjugacy_classes(2, 3)) {
      const auto g = evaluate(geo, w);
      Vec u(k);
      for (int i = 0; i < k; ++i) u(i) = normal(rng);
      const double len = translation_length(g);
      const double rate = contraction_rate_check(g, BoundaryPoint::from_direction(unit(u)), HypPoint::origin(k), 20);
      worst_contraction = std::max(worst_contraction, std::abs(rate + len) / len);
    }
  }
  o.passed = worst <= 1e-2 && worst_contraction <= 1e-2;
  o.metrics = {{"benoist_matrices", done},
               {"benoist_draws", tried},
               {"benoist_worst_abs", worst},
               {"contraction_worst_rel", worst_contraction}};
  o.detail = "Benoist rate on 100 random proximal 5x5: max abs err " + fmt(worst) +
             " (tol 1e-2); contraction vs -|g| (H2, H3, len<=3): max rel err " + fmt(worst_contraction) + " (tol 1e-2)";
  return o;
}

Outcome cocycle_identities() {
  Outcome o;
  const auto rep2 = standard_fuchsian();
  const auto fuchsian_geo = klein_from_psl2(rep2);
  const auto words = enumerate_conjugacy_classes(2, 6);
  struct Case {
    std::string name;
    Representation geo, lin;
  };
  const std::vector<Case> cases = {{"klein_H3", standard_klein(3).rep, standard_klein(3).rep},
                                   {"tau3", fuchsian_geo, sym_power_rep(rep2, 3)},
                                   {"tau4_perturbed", fuchsian_geo, perturb(sym_power_rep(rep2, 4), 1e-3, 5)}};
  double worst_c = 0.0, worst_e = 0.0;
  for (const auto& c : cases) {
    const auto samples = limit_samples(c.geo, c.lin, words);
    const auto r = cocycle_check(c.geo, c.lin, samples, 300, 9, 1e-8);
    o.metrics[c.name] = to_json(r);
    o.passed = o.passed && r.passed;
    worst_c = std::max(worst_c, r.cocycle_worst);
    worst_e = std::max(worst_e, r.equivariance_worst);
  }
  o.detail = "H3, tau3, perturbed tau4, 300 cases each: cocycle " + fmt(worst_c) + ", equivariance " + fmt(worst_e) +
             " (tol 1e-8)";
  return o;
}

Outcome desk_inequalities_all(const AcceptanceOptions& opts) {
  Outcome o;
  const std::vector<std::string> files = {"fuchsian_tau3.toml", "fuchsian_tau4.toml", "perturbed_tau3.toml",
                                          "perturbed_tau4.toml"};
  std::string parts;
  for (const auto& f : files) {
    const auto c = load_config((std::filesystem::path(opts.config_dir) / f).string());
    const auto ex = build_experiment(c);
    const auto classes = enumerate_conjugacy_classes(ex.lin.rank(), c.max_len);
    const auto di = desk_inequalities(ex.geo, ex.lin, classes, c.tol.inequality_slack, c.window);
    o.metrics[c.name] = to_json(di);
    o.passed = o.passed && di.passed;
    parts += " " + c.name + ": " + fmt(di.alpha_ub * di.h_rho / di.h_gamma) + "<=1.1, flag " +
             fmt(di.alpha_ub_flag * di.h_rho / (di.ratio_bound * di.h_gamma)) + "<=1.1;";
  }
  o.detail = "alpha*h/h_Gamma and flag ratio:" + parts;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  bool counts_ok = true;
  for (int rank = 2; rank <= 3; ++rank) {
    const auto classes = enumerate_conjugacy_classes(rank, 7);
    for (int n = 1; n <= 7; ++n) {
      const auto got = static_cast<std::uint64_t>(
          std::count_if(classes.begin(), classes.end(), [&](const Word& w) { return static_cast<int>(w.size()) == n; }));
      const auto want = conjugacy_count_oracle(rank, n);
      o.metrics["counts"]["rank" + std::to_string(rank)].push_back({{"n", n}, {"enumerated", got}, {"oracle", want}});
      counts_ok = counts_ok && got == want;
    }
  }
  bool span_ok = true;
  std::string spans;
  for (int k = 2; k <= 3; ++k) {
    const int span = adjoint_span_dimension(standard_klein(k).rep, enumerate_conjugacy_classes(2, 5));
    const int want = k * (k + 1) / 2;
    o.metrics["adjoint_span"]["k" + std::to_string(k)] = {{"span", span}, {"expected", want}};
    span_ok = span_ok && span == want;
    spans += " k=" + std::to_string(k) + ": " + std::to_string(span) + " vs " + std::to_string(want) + ";";
  }
  o.passed = counts_ok && span_ok;
  o.detail = std::string("enumeration vs oracle rank 2,3 len<=7: ") + (counts_ok ? "match" : "MISMATCH") +
             "; adjoint span vs k(k+1)/2:" + spans;
  return o;
}

}  // namespace

std::string criterion_title(int id) {
  static const char* titles[] = {"Fuchsian ladder",     "Klein identities",   "Weyl table",
                                 "Chamber maxima",      "Cross-ratio suite",  "Rank detection",
                                 "Asymptotic rates",    "Cocycle identities", "Desk inequalities",
                                 "Oracle equivalence"};
  if (id < 1 || id > kCriteria) throw std::out_of_range("criterion_title: id must be in 1..10");
  return titles[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.id = id;
  r.key = criterion_key(id);
  const auto t0 = Clock::now();
  try {
    Outcome o;
    switch (id) {
      case 1: o = fuchsian_ladder(); break;
      case 2: o = klein_identities(); break;
      case 3: o = weyl_table(); break;
      case 4: o = chamber_maxima(); break;
      case 5: o = cross_ratio_suite_all(); break;
      case 6: o = rank_detection(); break;
      case 7: o = asymptotic_rates(); break;
      case 8: o = cocycle_identities(); break;
      case 9: o = desk_inequalities_all(opts); break;
      case 10: o = oracle_equivalence(); break;
      default: throw std::out_of_range("run_criterion: id must be in 1..10");
    }
    r.passed = o.passed;
    r.detail = std::move(o.detail);
    r.metrics = std::move(o.metrics);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run_criterion(id, opts));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.key << "  " << r.detail << "  (" << std::fixed << std::setprecision(2)
     << r.seconds << " s)";
  return os.str();
}

}  // namespace rigidity
