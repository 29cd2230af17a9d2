#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rigidity/entropy.hpp"
#include "rigidity/fixtures.hpp"
#include "rigidity/words.hpp"

using namespace rigidity;
using doctest::Approx;

namespace {

constexpr int kLen = 8;

PeriodSpectrum base_spectrum() {
  return period_spectrum(klein_from_psl2(standard_fuchsian()), {Functional::TranslationLength, {}}, kLen);
}

std::vector<double> log_k(int n) {
  std::vector<double> v;
  for (int k = 1; k <= n; ++k) v.push_back(std::log(static_cast<double>(k)));
  return v;
}

}  // namespace

TEST_CASE("spectra are sorted, positive and one per class") {
  const auto ps = base_spectrum();
  CHECK(ps.size() == enumerate_conjugacy_classes(2, kLen).size());
  CHECK(ps.max_len == kLen);
  CHECK(ps.functional_label == "translation_length");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(ps.entries[i].value > 0.0);
    if (i > 0) CHECK(ps.entries[i - 1].value <= ps.entries[i].value);
  }
}

TEST_CASE("Klein model: lambda_1 equals the translation length") {
  for (int k = 2; k <= 3; ++k) {
    const auto rep = standard_klein(k).rep;
    const auto classes = enumerate_conjugacy_classes(2, 7);
    const auto l1 = period_spectrum(rep, {Functional::Lambda1, {}}, classes, 7);
    const auto tl = period_spectrum(rep, {Functional::TranslationLength, {}}, classes, 7);
    const auto hb = period_spectrum(rep, {Functional::Hilbert, {}}, classes, 7);
    REQUIRE(l1.classes() == tl.classes());
    for (std::size_t i = 0; i < l1.size(); ++i) {
      CHECK(l1.entries[i].word == tl.entries[i].word);
      CHECK(l1.entries[i].value == Approx(tl.entries[i].value).epsilon(1e-9));
      CHECK(hb.entries[i].value == Approx(tl.entries[i].value).epsilon(1e-9));
    }
    CHECK(entropy_ratio(hb, tl) == Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("symmetric powers scale the base spectrum") {
  const auto base = base_spectrum();
  for (int d = 3; d <= 6; ++d) {
    const auto rep = sym_power_rep(standard_fuchsian(), d);
    const auto spectral = period_spectrum(rep, {Functional::Lambda1, {}}, base.classes(), kLen);
    const auto hilbert = period_spectrum(rep, {Functional::Hilbert, {}}, base.classes(), kLen);
    REQUIRE(spectral.size() == base.size());
    const double c = (d - 1) / 2.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(spectral.entries[i].value == Approx(c * base.entries[i].value).epsilon(1e-9));
      CHECK(hilbert.entries[i].value == Approx(spectral.entries[i].value).epsilon(1e-9));
    }
    CHECK(entropy_ratio(spectral, base) == Approx(2.0 / (d - 1)).epsilon(1e-9));
    CHECK(entropy_ratio(hilbert, base) == Approx(2.0 / (d - 1)).epsilon(1e-9));
  }
}

TEST_CASE("phi functional matches lambda_1 for phi = e_1") {
  const auto rep = sym_power_rep(standard_fuchsian(), 4);
  const auto classes = enumerate_conjugacy_classes(2, 6);
  Vec e1 = Vec::Zero(4);
  e1(0) = 1.0;
  const auto phi = period_spectrum(rep, {Functional::Phi, e1}, classes, 6);
  const auto l1 = period_spectrum(rep, {Functional::Lambda1, {}}, classes, 6);
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(phi.entries[i].value == Approx(l1.entries[i].value).epsilon(1e-9));
}

TEST_CASE("nonpositive periods are reported with the word") {
  const auto rep = sym_power_rep(standard_fuchsian(), 3);
  Vec phi = Vec::Zero(3);
  phi(0) = -1.0;
  try {
    period_spectrum(rep, {Functional::Phi, phi}, 4);
    FAIL("expected NonPositivePeriod");
  } catch (const NonPositivePeriod& e) {
    CHECK_FALSE(e.word().empty());
  }
  CHECK_THROWS_AS(make_spectrum({{Word::parse("a"), 0.0}}, "x", 1), NonPositivePeriod);
}

TEST_CASE("growth rate of log k is 1") {
  const auto g = growth_rate(log_k(10000));
  CHECK(g.h == Approx(1.0).epsilon(1e-2));
  CHECK(g.t_lo < g.t_hi);
  CHECK(g.residual < 0.1);
  CHECK(g.count_at_hi >= 9500);
}

TEST_CASE("growth rate scales inversely") {
  const auto v = log_k(5000);
  const auto h = growth_rate(v).h;
  for (double c : {0.5, 2.0, 3.7}) {
    std::vector<double> s;
    for (double x : v) s.push_back(c * x);
    CHECK(growth_rate(s).h == Approx(h / c).epsilon(1e-12));
  }
  const auto base = base_spectrum();
  std::vector<PeriodEntry> scaled;
  for (const auto& e : base.entries) scaled.push_back({e.word, 3.0 * e.value});
  const auto ps = make_spectrum(std::move(scaled), "scaled", kLen);
  CHECK(entropy_ratio(ps, base) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(entropy_ratio(base, base) == 1.0);
}

TEST_CASE("entropy of the Fuchsian fixture") {
  // N(t) ~ e^{h t}; the free group of rank 2 with translation length 2 per
  // generator has entropy near log 3 / 2 at this truncation.
  const auto g = growth_rate(base_spectrum());
  CHECK(g.h > 0.2);
  CHECK(g.h < 1.0);
}

TEST_CASE("Klein separation: longer generators give smaller entropy") {
  const auto classes = enumerate_conjugacy_classes(2, 7);
  double previous = 0.0;
  for (double length : {6.0, 3.0}) {
    const auto rep = random_klein_schottky(2, 2, length, 7).rep;
    const double h = growth_rate(period_spectrum(rep, {Functional::TranslationLength, {}}, classes, 7)).h;
    if (previous > 0.0) CHECK(h > previous);
    previous = h;
  }
}

TEST_CASE("degenerate windows") {
  CHECK_THROWS_AS(growth_rate(std::vector<double>(100, 1.0)), DegenerateWindow);
  CHECK_THROWS_AS(growth_rate(log_k(10)), std::invalid_argument);
  CHECK_THROWS_AS(growth_rate(log_k(100), {0.9, 0.5}), std::invalid_argument);
  auto unsorted = log_k(100);
  std::swap(unsorted[10], unsorted[90]);
  CHECK_THROWS_AS(growth_rate(unsorted), std::invalid_argument);
}

TEST_CASE("entropy ratio rejects different class lists") {
  const auto a = base_spectrum();
  const auto b = period_spectrum(klein_from_psl2(standard_fuchsian()), {Functional::TranslationLength, {}}, 6);
  CHECK_THROWS_AS(entropy_ratio(a, b), std::invalid_argument);
}

TEST_CASE("spectra are conjugation invariant") {
  const auto rep = sym_power_rep(standard_fuchsian(), 3);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  Mat c = Mat::Identity(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) c(i, j) += 0.3 * g(rng);
  const auto classes = enumerate_conjugacy_classes(2, 6);
  const auto a = period_spectrum(rep, {Functional::Lambda1, {}}, classes, 6);
  const auto b = period_spectrum(conjugate(rep, c), {Functional::Lambda1, {}}, classes, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.entries[i].value == Approx(b.entries[i].value).epsilon(1e-9));
}

TEST_CASE("spectra are deterministic") {
  const auto a = base_spectrum(), b = base_spectrum();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries[i].word == b.entries[i].word);
    CHECK(a.entries[i].value == b.entries[i].value);
  }
}

TEST_CASE("CSV and JSON export") {
  const auto ps = make_spectrum({{Word::parse("a"), 2.0}, {Word::parse("ab"), 1.5}}, "x", 2);
  std::ostringstream os;
  write_spectrum_csv(os, ps);
  CHECK(os.str() == "word,value\nab,1.5\na,2\n");
  const auto j = to_json(growth_rate(log_k(100)));
  CHECK(j.contains("h"));
  CHECK(j["window"].size() == 2);
  CHECK(j.contains("residual"));
  CHECK(j.contains("count"));
}
