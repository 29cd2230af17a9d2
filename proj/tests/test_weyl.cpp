#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "rigidity/weyl.hpp"

using namespace rigidity;
using doctest::Approx;

namespace {

RationalVec ints(std::initializer_list<long long> xs) {
  RationalVec v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::vector<RootSystem> catalogue() {
  std::vector<RootSystem> out;
  for (int n = 1; n <= 9; ++n) out.push_back(root_system(RootKind::A, n));
  for (int n = 2; n <= 6; ++n) {
    out.push_back(root_system(RootKind::B, n));
    out.push_back(root_system(RootKind::C, n));
  }
  out.push_back(root_system(RootKind::G2, 2));
  return out;
}

}  // namespace

TEST_CASE("root data") {
  const auto a2 = root_system("A(2)");
  CHECK(a2.ambient_d == 3);
  REQUIRE(a2.simple_roots.size() == 2);
  CHECK(a2.simple_roots[0] == ints({1, -1, 0}));
  CHECK(a2.simple_roots[1] == ints({0, 1, -1}));
  CHECK(a2.highest_weight == ints({1, 0, 0}));
  CHECK(a2.constraints.size() == 1);

  const auto g2 = root_system("G2");
  CHECK(g2.ambient_d == 7);
  REQUIRE(g2.simple_roots.size() == 2);
  CHECK(g2.simple_roots[0] == ints({1, -1, 0}));
  CHECK(g2.simple_roots[1] == ints({-2, 1, 1}));
  CHECK(g2.highest_weight == ints({0, -1, 1}));
  CHECK(g2.constraints == std::vector<RationalVec>{ints({1, 1, 1})});

  for (int n = 2; n <= 5; ++n) {
    const auto b = root_system(RootKind::B, n);
    const auto c = root_system(RootKind::C, n);
    CHECK(b.ambient_d == 2 * n + 1);
    CHECK(c.ambient_d == 2 * n);
    RationalVec last(n, Rational(0));
    last[n - 1] = 1;
    CHECK(b.simple_roots.back() == last);
    last[n - 1] = 2;
    CHECK(c.simple_roots.back() == last);
    CHECK(b.constraints.empty());
  }
}

TEST_CASE("invalid root systems are rejected") {
  CHECK_THROWS_AS(root_system(RootKind::A, 0), std::invalid_argument);
  CHECK_THROWS_AS(root_system(RootKind::B, 1), std::invalid_argument);
  CHECK_THROWS_AS(root_system(RootKind::C, 1), std::invalid_argument);
  CHECK_THROWS_AS(root_system("D(4)"), std::invalid_argument);
  CHECK_THROWS_AS(root_system("A"), std::invalid_argument);
}

TEST_CASE("barycenters") {
  for (int d = 3; d <= 8; ++d) {
    RationalVec want;
    for (int i = 0; i < d; ++i) want.emplace_back(d - 1 - 2 * i, 2);
    CHECK(barycenter(root_system(RootKind::A, d - 1)) == want);
  }
  for (int n = 2; n <= 5; ++n) {
    RationalVec want;
    for (int i = 0; i < n; ++i) want.emplace_back(2 * (n - i) - 1, 2);
    CHECK(barycenter(root_system(RootKind::C, n)) == want);
  }
  CHECK(barycenter(root_system("G2")) == RationalVec{Rational(-1, 3), Rational(-4, 3), Rational(5, 3)});
}

TEST_CASE("barycenter: every simple root equals 1 and constraints vanish") {
  for (const auto& rs : catalogue()) {
    const auto bar = barycenter(rs);
    for (const auto& alpha : rs.simple_roots) CHECK(apply(alpha, bar) == Rational(1));
    for (const auto& c : rs.constraints) CHECK(apply(c, bar).numerator() == 0);
  }
}

TEST_CASE("ratio bounds") {
  CHECK(ratio_bound(root_system("A(2)")) == Rational(1));
  CHECK(ratio_bound(root_system("G2")) == Rational(1, 3));
  for (int n = 2; n <= 6; ++n) CHECK(ratio_bound(root_system(RootKind::B, n)) == Rational(1, n));
  for (const auto& rs : catalogue()) {
    const auto per_root = ratio_bounds_per_root(rs);
    for (const auto& r : per_root) CHECK(r == per_root.front());
    if (rs.ambient_d >= 3) CHECK(ratio_bound(rs) == Rational(2, rs.ambient_d - 1));
  }
}

TEST_CASE("V1 and V2") {
  for (int d = 3; d <= 7; ++d) {
    Vec a = Vec::Zero(d);
    a(0) = 1;
    a(d - 1) = -1;
    CHECK(V1(a) == Approx(1.0));
  }
  CHECK(V2(vec({1, 0, -1})) == Approx(1.0));
  CHECK(V1(vec({2, 1, -3})) == Approx(0.5));
  CHECK(V2(vec({2, 1, -3})) == Approx(0.4));
  CHECK_THROWS(V1(vec({0, 0, 0})));
  CHECK_THROWS(V2(vec({0, 0, 0})));
}

TEST_CASE("Vphi at the barycenter is the ratio bound") {
  for (const auto& rs : catalogue()) {
    const Vec bar = to_double(barycenter(rs));
    CHECK(Vphi(rs, to_double(rs.highest_weight), bar) ==
          Approx(boost::rational_cast<double>(ratio_bound(rs))).epsilon(1e-14));
  }
}

TEST_CASE("chamber sampler produces chamber points") {
  for (const auto& rs : catalogue()) {
    const ChamberSampler sampler(rs);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
      const Vec a = sampler.sample(rng);
      double total = 0.0;
      for (const auto& alpha : rs.simple_roots) {
        const double v = apply(to_double(alpha), a);
        CHECK(v >= 0.0);
        total += v;
      }
      CHECK(total == Approx(1.0));
      for (const auto& c : rs.constraints) CHECK(std::abs(apply(to_double(c), a)) < 1e-12);
    }
  }
}

TEST_CASE("chamber maxima") {
  for (int d = 3; d <= 6; ++d) {
    const auto rs = root_system(RootKind::A, d - 1);
    CHECK(chamber_max_sample([](const Vec& a) { return V1(a); }, rs, 20000, d).value <= 1.0 + 1e-12);
    CHECK(chamber_max_sample([](const Vec& a) { return V2(a); }, rs, 20000, d).value <= 1.0 + 1e-12);
  }
  for (const auto& rs : {root_system("A(2)"), root_system("B(2)"), root_system("C(2)"), root_system("G2")}) {
    const Vec chi = to_double(rs.highest_weight);
    const auto m = chamber_max_sample([&](const Vec& a) { return Vphi(rs, chi, a); }, rs, 200000, 11);
    const double bound = boost::rational_cast<double>(ratio_bound(rs));
    CHECK(m.value <= bound + 1e-12);
    CHECK(m.value == Approx(bound).epsilon(1e-2));
    CHECK(ray_angle(m.argmax, to_double(barycenter(rs))) < 5e-2);
  }
}

TEST_CASE("chamber sampling is deterministic per seed") {
  const auto rs = root_system("A(3)");
  const auto f = [](const Vec& a) { return V2(a); };
  const auto x = chamber_max_sample(f, rs, 1000, 5), y = chamber_max_sample(f, rs, 1000, 5);
  CHECK(x.value == y.value);
  CHECK(x.argmax == y.argmax);
}

TEST_CASE("simplex equalizer: barycentric coordinates") {
  for (int n = 1; n <= 4; ++n) {
    // x_1, ..., x_n and 1 - sum x_i.
    AffineFamily phi{Mat::Zero(n + 1, n), Vec::Zero(n + 1)};
    phi.A.topRows(n) = Mat::Identity(n, n);
    phi.A.row(n).setConstant(-1.0);
    phi.c(n) = 1.0;
    const auto r = simplex_equalizer_check(phi, 20000, n);
    CHECK(r.equal_value == Approx(1.0 / (n + 1)));
    for (Eigen::Index i = 0; i < n; ++i) CHECK(r.equal_point(i) == Approx(1.0 / (n + 1)));
    CHECK(r.gap >= -1e-12);
  }
}

TEST_CASE("simplex equalizer: A(2) chamber slice") {
  // a = (1, s, -1 - s) on the slice a1 = 1; the roots are 1 - s and 1 + 2s.
  AffineFamily phi{Mat(2, 1), Vec(2)};
  phi.A << -1.0, 2.0;
  phi.c << 1.0, 1.0;
  const auto r = simplex_equalizer_check(phi, 10000, 1);
  CHECK(r.equal_point(0) == Approx(0.0));
  CHECK(r.equal_value == Approx(1.0));
  CHECK(r.sampled_max <= r.equal_value + 1e-12);
}

TEST_CASE("simplex equalizer: random perturbations") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 0.1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    AffineFamily phi{Mat::Zero(n + 1, n), Vec::Zero(n + 1)};
    phi.A.topRows(n) = Mat::Identity(n, n);
    phi.A.row(n).setConstant(-1.0);
    phi.c(n) = 1.0;
    for (Eigen::Index i = 0; i <= n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) phi.A(i, j) += g(rng);
      phi.c(i) += g(rng) * 0.1;
    }
    const auto r = simplex_equalizer_check(phi, 20000, trial);
    CHECK(r.sampled_max <= r.equal_value + 1e-6);
    const Vec at = phi.A * r.equal_point + phi.c;
    CHECK(at.maxCoeff() - at.minCoeff() < 1e-12);
  }
}

TEST_CASE("simplex equalizer: unbounded region is rejected") {
  AffineFamily phi{Mat(2, 1), Vec(2)};
  phi.A << 1.0, 1.0;
  phi.c << 0.0, 1.0;
  CHECK_THROWS_AS(simplex_equalizer_check(phi, 10, 1), UnboundedRegion);
}

TEST_CASE("a2 inequality") {
  const auto v = remark_a2_holds(vec({1, -0.1, -0.4, -0.5}));
  REQUIRE(v.has_value());
  CHECK(*v);
  CHECK_FALSE(remark_a2_holds(vec({1, 0, 0, -1})).has_value());
  CHECK_FALSE(remark_a2_holds(vec({2, 1, -1, -2})).has_value());
  for (int d = 3; d <= 6; ++d) {
    const auto r = remark_a2_check(50000, d, d);
    CHECK(r.sampled == 50000);
    CHECK(r.checked > 0);
    CHECK(r.violations == 0);
  }
}

TEST_CASE("Hilbert functional") {
  CHECK(hilbert_functional(root_system("A(2)")) == RationalVec{Rational(1, 2), Rational(0), Rational(-1, 2)});
  CHECK(hilbert_functional(root_system("A(3)")) ==
        RationalVec{Rational(1, 2), Rational(0), Rational(0), Rational(-1, 2)});
  CHECK(hilbert_functional(root_system("B(3)")) == root_system("B(3)").highest_weight);
  CHECK(hilbert_functional(root_system("G2")) == root_system("G2").highest_weight);
}

TEST_CASE("rational formatting") {
  CHECK(to_string(Rational(2, 4)) == "1/2");
  CHECK(to_string(Rational(3)) == "3");
}
