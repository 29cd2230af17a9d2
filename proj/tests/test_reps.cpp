#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rigidity/fixtures.hpp"
#include "rigidity/hypgeom.hpp"
#include "rigidity/spectral.hpp"

using namespace rigidity;
using doctest::Approx;

namespace {

Mat diag(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v.asDiagonal();
}

Mat golden() {
  Mat a(2, 2);
  a << 2, 1, 1, 1;
  return a;
}

Representation one_generator(const Mat& g) { return Representation({ProjectiveMatrix(g)}, "test"); }

}  // namespace

TEST_CASE("evaluate examples") {
  const auto rep = one_generator(diag({2, 0.5}));
  CHECK(projectively_equal(evaluate(rep, Word::parse("aa")).matrix(), diag({4, 0.25}), 1e-15));
  const auto g = evaluate(one_generator(golden()), Word::parse("a"));
  CHECK(projectively_equal(g.matrix(), golden(), 1e-15));
  CHECK(std::abs(g.matrix().determinant()) == Approx(1.0));
  CHECK(projectively_equal(evaluate(rep, Word::parse("A")).matrix(), diag({0.5, 2}), 1e-15));
}

TEST_CASE("symmetric power examples") {
  const double t = 0.8;
  const Mat s = sym_power_matrix(diag({std::exp(t), std::exp(-t)}), 3);
  CHECK(projectively_equal(s, diag({std::exp(2 * t), 1.0, std::exp(-2 * t)}), 1e-14));
  const double mu = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(jordan_projection(ProjectiveMatrix(sym_power_matrix(golden(), 3))).first() == Approx(2.0 * mu).epsilon(1e-12));
  // Sym^{d-1} of diag(x, y) has entries x^{d-1-i} y^i.
  const Mat s4 = sym_power_matrix(diag({2.0, 3.0}), 4);
  CHECK(s4(0, 0) == Approx(8.0));
  CHECK(s4(1, 1) == Approx(12.0));
  CHECK(s4(2, 2) == Approx(18.0));
  CHECK(s4(3, 3) == Approx(27.0));
}

TEST_CASE("symmetric power is a homomorphism") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Mat a(2, 2), b(2, 2);
    a << n(rng), n(rng), n(rng), n(rng);
    b << n(rng), n(rng), n(rng), n(rng);
    for (int d = 2; d <= 6; ++d)
      CHECK(((sym_power_matrix(a * b, d) - sym_power_matrix(a, d) * sym_power_matrix(b, d)).norm() <=
             1e-12 * sym_power_matrix(a * b, d).norm() + 1e-12));
  }
}

TEST_CASE("exterior power examples") {
  const Mat w = exterior_power_matrix(diag({4, 2, 0.5, 0.25}), 2);
  CHECK(w.rows() == 6);
  CHECK(w.diagonal().maxCoeff() == Approx(8.0));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  int done = 0;
  while (done < 20) {
    Mat g(4, 4);
    for (int i = 0; i < 16; ++i) g(i / 4, i % 4) = n(rng);
    const ProjectiveMatrix pg(g);
    const auto j = jordan_projection(pg);
    if (j[0] - j[1] < 1e-3 || j[1] - j[2] < 1e-3) continue;
    const auto j2 = jordan_projection(ProjectiveMatrix(exterior_power_matrix(pg.matrix(), 2)));
    CHECK(j2.first() == Approx(j[0] + j[1]).epsilon(1e-9));
    const auto j3 = jordan_projection(ProjectiveMatrix(exterior_power_matrix(pg.matrix(), 3)));
    CHECK(j3.first() == Approx(-j.last()).epsilon(1e-9));
    ++done;
  }
}

TEST_CASE("property: Lambda^2 Jordan vector is the sorted pairwise sums") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Mat g(4, 4);
    for (int i = 0; i < 16; ++i) g(i / 4, i % 4) = n(rng);
    const ProjectiveMatrix pg(g);
    const auto j = jordan_projection(pg);
    std::vector<double> sums;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) sums.push_back(j[a] + j[b]);
    std::sort(sums.rbegin(), sums.rend());
    const auto j2 = jordan_projection(ProjectiveMatrix(exterior_power_matrix(pg.matrix(), 2)));
    for (std::size_t i = 0; i < sums.size(); ++i) CHECK(j2[i] == Approx(sums[i]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("property: functors commute with evaluation") {
  const auto rep2 = standard_fuchsian();
  const auto tau4 = sym_power_rep(rep2, 4);
  const auto klein = standard_klein(3).rep;
  const auto wedge = exterior_power_rep(klein, 2);
  for (const Word& w : enumerate_conjugacy_classes(2, 4)) {
    CHECK(projectively_equal(sym_power_matrix(evaluate(rep2, w).matrix(), 4), evaluate(tau4, w).matrix(), 1e-10));
    CHECK(projectively_equal(exterior_power_matrix(evaluate(klein, w).matrix(), 2), evaluate(wedge, w).matrix(), 1e-10));
  }
}

TEST_CASE("property: evaluate is a homomorphism on reduced products") {
  const auto rep = standard_klein(3).rep;
  const auto words = enumerate_conjugacy_classes(2, 3);
  for (const Word& u : words)
    for (const Word& v : words) {
      const Word uv = multiply(u, v);
      if (uv.size() != u.size() + v.size()) continue;
      CHECK(projectively_equal(evaluate(rep, uv).matrix(), evaluate(rep, u).matrix() * evaluate(rep, v).matrix(), 1e-12));
    }
}

TEST_CASE("Klein Schottky examples") {
  Vec e1 = Vec::Unit(2, 0);
  const auto ks = klein_schottky(2, {{e1, 1.5, 0.0}});
  const auto j = jordan_projection(ks.rep.generators()[0]);
  CHECK(j[0] == Approx(1.5));
  CHECK(std::abs(j[1]) < 1e-12);
  CHECK(j[2] == Approx(-1.5));

  const auto perp = klein_schottky(2, {{Vec::Unit(2, 0), 4.0, 0.0}, {Vec::Unit(2, 1), 4.0, 0.0}});
  CHECK(perp.certificate.ok);
  CHECK(perp.certificate.margin > 0.0);
  CHECK_THROWS_AS(klein_schottky(2, {{Vec::Unit(2, 0), 0.3, 0.0}, {Vec::Unit(2, 1), 0.3, 0.0}}), PingPongError);
}

TEST_CASE("property: Klein images preserve the Lorentz form and lambda1 = translation length") {
  for (int k = 2; k <= 3; ++k) {
    const auto rep = standard_klein(k).rep;
    for (const auto& g : rep.generators()) CHECK(lorentz_residual(g.matrix()) <= 1e-10);
    for (const Word& w : enumerate_conjugacy_classes(2, 6)) {
      const auto g = evaluate(rep, w);
      CHECK(word_lambda1(rep, w) == Approx(translation_length(g)).epsilon(1e-10));
    }
  }
  const auto so12 = klein_from_psl2(standard_fuchsian());
  for (const auto& g : so12.generators()) CHECK(lorentz_residual(g.matrix()) <= 1e-10);
}

TEST_CASE("adjoint construction") {
  // The adjoint image of a Klein group has lambda1 = lambda1 - lambda_d = 2 |g|.
  for (int k = 2; k <= 3; ++k) {
    const auto rep = standard_klein(k).rep;
    const auto adj = adjoint_irreducible(rep, enumerate_conjugacy_classes(2, 5));
    for (const Word& w : enumerate_conjugacy_classes(2, 5))
      CHECK(word_lambda1(adj.rep, w) == Approx(word_lambda1(rep, w) - word_lambda_last(rep, w)).epsilon(1e-9));
  }
  // Span dimension is stable when the sample is enlarged.
  const auto tau3 = sym_power_rep(standard_fuchsian(), 3);
  CHECK(adjoint_span_dimension(tau3, enumerate_conjugacy_classes(2, 4)) ==
        adjoint_span_dimension(tau3, enumerate_conjugacy_classes(2, 6)));
}

TEST_CASE("perturbation") {
  const auto tau4 = sym_power_rep(standard_fuchsian(), 4);
  const auto same = perturb(tau4, 0.0, 1);
  for (int i = 0; i < tau4.rank(); ++i) CHECK(same.generators()[i].matrix() == tau4.generators()[i].matrix());
  const auto small = perturb(tau4, 1e-3, 2);
  for (const Word& w : enumerate_conjugacy_classes(2, 8)) {
    CHECK(proximality_data(evaluate(small, w)));
    CHECK(proximality_data(evaluate(small, w.inverse())));
  }
  const auto huge = perturb(sym_power_rep(standard_fuchsian(), 3), 50.0, 3);
  int failures = 0;
  for (const Word& w : enumerate_conjugacy_classes(2, 4))
    if (!proximality_data(evaluate(huge, w)) || !proximality_data(evaluate(huge, w.inverse()))) ++failures;
  CHECK(failures > 0);
  CHECK(perturb(tau4, 1e-3, 2).generators()[0].matrix() == small.generators()[0].matrix());
}

TEST_CASE("representation JSON round trip") {
  const auto rep = standard_klein(2).rep;
  const auto back = representation_from_json(to_json(rep));
  CHECK(back.dim() == rep.dim());
  CHECK(back.rank() == rep.rank());
  for (int i = 0; i < rep.rank(); ++i)
    CHECK(projectively_equal(back.generators()[i].matrix(), rep.generators()[i].matrix(), 1e-15));
}
