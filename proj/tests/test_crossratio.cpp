#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rigidity/checks.hpp"
#include "rigidity/fixtures.hpp"
#include "rigidity/hypgeom.hpp"
#include "rigidity/spectral.hpp"

using namespace rigidity;
using doctest::Approx;

namespace {

struct Setup {
  Representation geo, lin;
  SampleSet samples;
};

Setup klein(int k) {
  const auto r = standard_klein(k).rep;
  return {r, r, limit_samples(r, r, enumerate_conjugacy_classes(2, 6))};
}

Setup tau(int d) {
  const auto rep2 = standard_fuchsian();
  const auto geo = klein_from_psl2(rep2);
  const auto lin = sym_power_rep(rep2, d);
  return {geo, lin, limit_samples(geo, lin, enumerate_conjugacy_classes(2, 6))};
}

// Sample on RP^1 at s: line (s : 1), covector (1 : -s).
LimitSample rp1(double s) {
  Vec line(2), cov(2), u(2);
  line << s, 1.0;
  cov << 1.0, -s;
  u << std::cos(s), std::sin(s);
  return {BoundaryPoint::from_direction(u), line, cov, Word()};
}

LimitSample transport(const Representation& geo, const Representation& lin, const Word& g, const LimitSample& x) {
  return {apply(evaluate(geo, g).matrix(), x.base), apply_word(lin, g, x.line), apply_word_dual(lin, g, x.covector),
          Word()};
}

// Sum of the condition numbers |theta||v|/|theta(v)| of the four pairings.
double pairing_condition(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
  auto cond = [](const LimitSample& a, const LimitSample& b) {
    return a.covector.norm() * b.line.norm() / std::abs(a.covector.dot(b.line));
  };
  return cond(x, y) + cond(z, y) + cond(z, t) + cond(x, t);
}

}  // namespace

TEST_CASE("Klein samples: the line is the null direction of the base point") {
  const auto s = klein(3);
  REQUIRE(s.samples.size() > 100);
  for (const auto& x : s.samples) CHECK(projective_distance(x.line, x.base.coords()) < 1e-10);
}

TEST_CASE("tau_d samples lie on the rational normal curve") {
  const auto rep2 = standard_fuchsian();
  for (int d = 3; d <= 5; ++d) {
    const auto s = tau(d);
    for (const auto& x : s.samples) {
      const auto p = proximality_data(evaluate(rep2, x.word));
      REQUIRE(p);
      // Veronese image (a x + b y)^{d-1} in the basis x^{d-1}, x^{d-2} y, ..., y^{d-1}.
      Vec v(d);
      double binom = 1.0;
      for (int i = 0; i < d; ++i) {
        v(i) = binom * std::pow(p->attracting_line(0), d - 1 - i) * std::pow(p->attracting_line(1), i);
        binom = binom * (d - 1 - i) / (i + 1);
      }
      CHECK(projective_distance(v, x.line) < 1e-10);
    }
  }
}

TEST_CASE("rotations of a word give the same sample") {
  const auto s = tau(3);
  for (const char* w : {"ab", "aBB", "abAB"}) {
    const Word word = Word::parse(w);
    auto rot = word.letters();
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    const auto x = limit_sample(s.geo, s.lin, word);
    const auto y = limit_sample(s.geo, s.lin, Word(rot));
    // Rotation conjugates by the first letter, which moves the fixed point.
    const auto moved = transport(s.geo, s.lin, Word({word[0]}).inverse(), x);
    CHECK(projective_distance(moved.line, y.line) < 1e-10);
    CHECK(same_base(moved, y));
    CHECK(same_base(x, limit_sample(s.geo, s.lin, least_rotation(word))));
  }
}

TEST_CASE("periods of the cocycles") {
  for (const auto& s : {klein(3), tau(4)}) {
    for (const auto& x : s.samples) {
      if (x.word.size() > 4) continue;
      CHECK(cocycle_beta(s.lin, x.word, x) == Approx(word_lambda1(s.lin, x.word)).epsilon(1e-9));
      CHECK(cocycle_beta_bar(s.lin, x.word, x) == Approx(-word_lambda_last(s.lin, x.word)).epsilon(1e-9));
    }
  }
}

TEST_CASE("gromov_G examples") {
  Vec v(3);
  v << 0.6, 0.8, 0.0;
  CHECK(gromov_G(v, v) == Approx(0.0).scale(1.0));
  CHECK(gromov_G(Vec::Unit(3, 0), Vec::Unit(3, 1)) == -std::numeric_limits<double>::infinity());
  CHECK(gromov_G(Vec::Unit(3, 0), v) <= 0.0);
}

TEST_CASE("cross ratio examples") {
  const auto x = rp1(0), y = rp1(1), z = rp1(2), t = rp1(3);
  CHECK(cross_ratio(x, y, z, t) == Approx(-1.0 / 3.0));
  CHECK(classical_cross_ratio(0, 1, 2, 3) == Approx(-1.0 / 3.0));
  CHECK(cross_ratio(x, y, x, t) == Approx(1.0));
  CHECK(cross_ratio(x, y, z, y) == Approx(1.0));
  CHECK_THROWS_AS(cross_ratio(x, y, z, x), DegenerateTuple);
}

TEST_CASE("Klein H^2 cross ratio is the square of the classical one") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  auto sample = [](double theta) {
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    const auto b = BoundaryPoint::from_direction(u);
    Vec cov = b.coords();
    cov.tail(2) *= -1.0;  // Lorentz dual of the null vector
    return LimitSample{b, b.coords(), cov, Word()};
  };
  for (int i = 0; i < 200; ++i) {
    const double a = angle(rng), b = angle(rng), c = angle(rng), d = angle(rng);
    const double classical = classical_cross_ratio(std::tan(a / 2), std::tan(b / 2), std::tan(c / 2), std::tan(d / 2));
    CHECK(cross_ratio(sample(a), sample(b), sample(c), sample(d)) == Approx(classical * classical).epsilon(1e-8));
  }
}

TEST_CASE("Gromov cross ratio equals |b| and is nonnegative") {
  for (const auto& s : {klein(2), tau(3), tau(4)}) {
    for (const auto& q : random_five_tuples(s.samples, 1000, 5)) {
      const auto &x = s.samples[q[0]], &y = s.samples[q[1]], &z = s.samples[q[2]], &t = s.samples[q[3]];
      const double g = cross_ratio_from_gromov(x, y, z, t);
      CHECK(g >= 0.0);
      CHECK(g == Approx(std::abs(cross_ratio(x, y, z, t))).epsilon(1e-9));
    }
  }
}

TEST_CASE("cross ratio is invariant under the group") {
  const auto s = tau(4);
  const Word g = Word::parse("aB");
  for (const auto& q : random_five_tuples(s.samples, 200, 6)) {
    std::vector<LimitSample> moved;
    for (int i = 0; i < 4; ++i) moved.push_back(transport(s.geo, s.lin, g, s.samples[q[i]]));
    const double b = cross_ratio(s.samples[q[0]], s.samples[q[1]], s.samples[q[2]], s.samples[q[3]]);
    const double cond = pairing_condition(moved[0], moved[1], moved[2], moved[3]);
    INFO("b=" << b << " cond=" << cond);
    CHECK(cross_ratio(moved[0], moved[1], moved[2], moved[3]) == Approx(b).epsilon(std::max(1e-8, 1e-15 * cond)));
  }
}

TEST_CASE("axiom check: positive and negative controls") {
  const auto s = klein(3);
  const auto tuples = random_five_tuples(s.samples, 1000, 7);
  const auto plain = axiom_check(cross_ratio, s.samples, tuples, 1e-8);
  CHECK(plain.passed());
  CHECK(plain.tuples == 1000);
  const auto squared = axiom_check(
      [](const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
        const double b = cross_ratio(x, y, z, t);
        return b * b;
      },
      s.samples, tuples, 1e-8);
  CHECK(squared.passed());
  // Corrupted: one covector entry flips sign whenever x is the first argument.
  const auto corrupted = axiom_check(
      [](const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
        LimitSample bad = x;
        bad.covector(1) = -bad.covector(1);
        return cross_ratio(bad, y, z, t);
      },
      s.samples, tuples, 1e-8);
  CHECK_FALSE(corrupted.passed());
  CHECK((corrupted.cocycle_first > 1e-8 || corrupted.cocycle_second > 1e-8));
}

TEST_CASE("Klein H^3 cross ratio is nonnegative") {
  const auto s = klein(3);
  for (const auto& q : random_five_tuples(s.samples, 1000, 8))
    CHECK(cross_ratio(s.samples[q[0]], s.samples[q[1]], s.samples[q[2]], s.samples[q[3]]) >= 0.0);
}

TEST_CASE("chi_p determinants") {
  const auto s = klein(2);
  const auto q = random_five_tuples(s.samples, 1, 9).front();
  const auto c1 = chi_p_det(cross_ratio, s.samples, {q[0], q[1]}, {q[2], q[3]});
  CHECK(c1.det == Approx(cross_ratio(s.samples[q[1]], s.samples[q[3]], s.samples[q[0]], s.samples[q[2]])));
  // Repeated entries are rejected.
  const auto tuples = random_five_tuples(s.samples, 2, 10);
  const std::vector<std::size_t> e{tuples[0][0], tuples[0][1], tuples[0][1]};
  const std::vector<std::size_t> u{tuples[1][2], tuples[1][3], tuples[1][4]};
  CHECK_THROWS_AS(chi_p_det(cross_ratio, s.samples, e, u), DegenerateTuple);
  const auto r = rank_estimate(cross_ratio, s.samples, 5, 20, kRankTol, 1);
  REQUIRE(r.max_scaled_chi.size() >= 4);
  CHECK(r.max_scaled_chi[3] < 1e-8);
  CHECK(r.max_scaled_chi[2] > 1e-6);
}

TEST_CASE("rank estimates") {
  CHECK(rank_estimate(cross_ratio, klein(2).samples, 6, 20, kRankTol, 1).rank == 3);
  CHECK(rank_estimate(cross_ratio, klein(3).samples, 7, 20, kRankTol, 1).rank == 4);
  for (int d = 3; d <= 5; ++d) CHECK(rank_estimate(cross_ratio, tau(d).samples, d + 2, 20, kRankTol, 1).rank == d);
  const auto planar = planar_klein_in_h3().rep;
  const auto ps = limit_samples(planar, planar, enumerate_conjugacy_classes(2, 6));
  CHECK(line_span_dimension(ps) == 3);
  CHECK(rank_estimate(cross_ratio, ps, 6, 20, kRankTol, 1).rank == 3);
}

TEST_CASE("Hoelder upper bounds") {
  const auto classes = enumerate_conjugacy_classes(2, 6);
  const auto k = klein(3);
  CHECK(holder_upper_bound(k.geo, k.lin, classes) == Approx(1.0).epsilon(1e-9));
  for (int d = 3; d <= 5; ++d) {
    const auto t = tau(d);
    CHECK(holder_upper_bound(t.geo, t.lin, classes) == Approx(1.0).epsilon(1e-9));
  }
  const auto t4 = tau(4);
  const auto p4 = perturb(t4.lin, 1e-3, 12);
  const double b6 = holder_upper_bound(t4.geo, p4, enumerate_conjugacy_classes(2, 6));
  const double b8 = holder_upper_bound(t4.geo, p4, enumerate_conjugacy_classes(2, 8));
  CHECK(b8 > 0.0);
  CHECK(b8 <= b6);
  CHECK(std::abs(b8 - b6) <= 0.1 * b6);
}

TEST_CASE("Hoelder exponent fit") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> logd(-14.0, 0.0);
  std::vector<HolderPair> synthetic;
  for (int i = 0; i < 2000; ++i) {
    const double delta = std::exp(logd(rng));
    synthetic.push_back({delta, std::sqrt(delta)});
  }
  CHECK(std::abs(holder_exponent_fit(synthetic).alpha - 0.5) <= 0.02);
  CHECK_THROWS(holder_exponent_fit(std::vector<HolderPair>(synthetic.begin(), synthetic.begin() + 50)));

  const auto k = klein(2);
  const auto fit = holder_exponent_fit(holder_pairs(k.samples, HypPoint::origin(2), 20000, 3));
  CHECK(fit.alpha >= 0.9);
  CHECK(fit.alpha <= 1.1);
  const auto classes = enumerate_conjugacy_classes(2, 6);
  for (int d = 3; d <= 4; ++d) {
    const auto t = tau(d);
    const auto f = holder_exponent_fit(holder_pairs(t.samples, HypPoint::origin(2), 20000, 3));
    CHECK(f.alpha <= holder_upper_bound(t.geo, t.lin, classes) * 1.15);
  }
}

TEST_CASE("adjoint cross-ratio identity and suite") {
  const auto s = klein(2);
  SuiteOptions opt;
  opt.adjoint = true;
  const auto r = cross_ratio_suite(s.geo, s.lin, s.samples, opt);
  CHECK(r.passed);
  REQUIRE(r.adjoint_worst);
  CHECK(*r.adjoint_worst <= 1e-8);
}

TEST_CASE("cocycle identities") {
  for (const auto& s : {klein(3), tau(3)}) {
    const auto c = cocycle_check(s.geo, s.lin, s.samples, 200, 2, 1e-8);
    CHECK(c.passed);
  }
}

TEST_CASE("samples CSV has a header and one row per sample") {
  const auto s = tau(3);
  std::ostringstream os;
  write_samples_csv(os, s.samples);
  const std::string text = os.str();
  CHECK(text.rfind("word,", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == s.samples.size() + 1);
}
