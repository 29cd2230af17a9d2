#include "rigidity/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>

#include "rigidity/hypgeom.hpp"
#include "rigidity/spectral.hpp"

namespace rigidity {

std::string FunctionalSpec::label() const {
  switch (kind) {
    case Functional::Lambda1: return "lambda1";
    case Functional::Hilbert: return "hilbert";
    case Functional::TranslationLength: return "translation_length";
    case Functional::Phi: {
      std::string s = "phi(";
      for (Eigen::Index i = 0; i < phi.size(); ++i) s += (i ? "," : "") + std::to_string(phi(i));
      return s + ")";
    }
  }
  return "?";
}

std::vector<double> PeriodSpectrum::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

std::vector<Word> PeriodSpectrum::classes() const {
  std::vector<Word> w;
  w.reserve(entries.size());
  for (const auto& e : entries) w.push_back(e.word);
  std::sort(w.begin(), w.end());
  return w;
}

PeriodSpectrum make_spectrum(std::vector<PeriodEntry> entries, std::string label, int max_len) {
  for (const auto& e : entries)
    if (!(e.value > 0.0) || !std::isfinite(e.value))
      throw NonPositivePeriod("period spectrum: nonpositive value on " + e.word.str(), e.word);
  std::sort(entries.begin(), entries.end(), [](const PeriodEntry& a, const PeriodEntry& b) {
    return a.value != b.value ? a.value < b.value : a.word < b.word;
  });
  return {std::move(entries), std::move(label), max_len};
}

PeriodSpectrum period_spectrum(const Representation& rep, const FunctionalSpec& f, const std::vector<Word>& classes,
                               int max_len) {
  std::vector<PeriodEntry> entries;
  entries.reserve(classes.size());
  std::optional<ExteriorTower> tower;
  if (f.kind == Functional::Phi) {
    if (f.phi.size() != rep.dim()) throw std::invalid_argument("period_spectrum: phi has the wrong length");
    tower.emplace(rep);
  }
  for (const Word& w : classes) {
    double v = 0.0;
    switch (f.kind) {
      case Functional::Lambda1: v = word_lambda1(rep, w); break;
      case Functional::Hilbert: v = 0.5 * (word_lambda1(rep, w) - word_lambda_last(rep, w)); break;
      case Functional::TranslationLength: v = translation_length(evaluate(rep, w)); break;
      case Functional::Phi: {
        const auto lambda = word_jordan_projection(*tower, w);
        for (std::size_t i = 0; i < lambda.size(); ++i) v += f.phi(static_cast<Eigen::Index>(i)) * lambda[i];
        break;
      }
    }
    if (!(v > 0.0)) throw NonPositivePeriod("period spectrum: " + f.label() + " is nonpositive on " + w.str(), w);
    entries.push_back({w, v});
  }
  return make_spectrum(std::move(entries), f.label(), max_len);
}

PeriodSpectrum period_spectrum(const Representation& rep, const FunctionalSpec& f, int max_len) {
  return period_spectrum(rep, f, enumerate_conjugacy_classes(rep.rank(), max_len), max_len);
}

GrowthEstimate growth_rate(const std::vector<double>& v, const WindowPolicy& w) {
  if (v.size() < kMinSpectrum) throw std::invalid_argument("growth_rate: need at least 50 values");
  if (!(0.0 <= w.q_lo && w.q_lo < w.q_hi && w.q_hi <= 1.0))
    throw std::invalid_argument("growth_rate: window quantiles must satisfy 0 <= lo < hi <= 1");
  if (!std::is_sorted(v.begin(), v.end())) throw std::invalid_argument("growth_rate: values must be sorted");
  const double last = static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(w.q_lo * last));
  const auto hi = static_cast<std::size_t>(std::floor(w.q_hi * last));
  GrowthEstimate g;
  g.t_lo = v[lo];
  g.t_hi = v[hi];
  if (!(g.t_lo < g.t_hi)) throw DegenerateWindow("growth_rate: window collapses to a single value");
  std::vector<double> xs, ys;
  for (std::size_t k = lo; k <= hi; ++k) {
    const auto n = std::upper_bound(v.begin(), v.end(), v[k] * (1.0 + kTieTol)) - v.begin();
    xs.push_back(v[k]);
    ys.push_back(std::log(static_cast<double>(n)));
  }
  g.h = fit_slope(xs, ys);
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + g.h * (xs[i] - mx));
    ss += r * r;
  }
  g.residual = std::sqrt(ss / xs.size());
  g.count_at_hi = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), g.t_hi * (1.0 + kTieTol)) - v.begin());
  return g;
}

GrowthEstimate growth_rate(const PeriodSpectrum& ps, const WindowPolicy& w) { return growth_rate(ps.values(), w); }

double entropy_ratio(const PeriodSpectrum& a, const PeriodSpectrum& b, const WindowPolicy& w) {
  if (a.classes() != b.classes()) throw std::invalid_argument("entropy_ratio: spectra are over different class lists");
  return growth_rate(a, w).h / growth_rate(b, w).h;
}

void write_spectrum_csv(std::ostream& os, const PeriodSpectrum& ps) {
  os << "word,value\n";
  os.precision(17);
  for (const auto& e : ps.entries) os << e.word.str() << ',' << e.value << '\n';
}

nlohmann::json to_json(const GrowthEstimate& g) {
  return {{"h", g.h}, {"window", {g.t_lo, g.t_hi}}, {"residual", g.residual}, {"count", g.count_at_hi}};
}

}  // namespace rigidity
