#include "rigidity/crossratio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include <Eigen/SVD>

#include "rigidity/spectral.hpp"

namespace rigidity {

bool same_base(const LimitSample& a, const LimitSample& b) {
  return (a.base.coords() - b.base.coords()).cwiseAbs().maxCoeff() <= kBaseDedupTol;
}

namespace {

constexpr int kRefineSteps = 4;

// Power iteration letter by letter: the eigenvectors of a long product are
// only as accurate as its condition number allows, the letters are not.
Vec refine_line(const Representation& rep, const Word& w, Vec v) {
  for (int step = 0; step < kRefineSteps; ++step) v = apply_word(rep, w, v);
  return canonical_sign(v);
}

// The covector is the top eigenvector of rep(w)^{-T}.
Vec refine_covector(const Representation& rep, const Word& w, Vec theta) {
  for (int step = 0; step < kRefineSteps; ++step) theta = apply_word_dual(rep, w, theta);
  return canonical_sign(theta);
}

}  // namespace

LimitSample limit_sample(const Representation& geo_rep, const Representation& lin_rep, const Word& w) {
  const auto fixed = boundary_fixed_points(evaluate(geo_rep, w));
  const auto fwd = proximality_data(evaluate(lin_rep, w));
  const auto bwd = proximality_data(evaluate(lin_rep, w.inverse()));
  if (!fwd || !bwd) throw NotProximalError("limit_samples: image of " + w.str() + " is not biproximal", w);
  return {fixed.attracting, refine_line(lin_rep, w, fwd->attracting_line),
          refine_covector(lin_rep, w, bwd->repelling_covector), w};
}

SampleSet limit_samples(const Representation& geo_rep, const Representation& lin_rep, const std::vector<Word>& words) {
  if (geo_rep.rank() != lin_rep.rank()) throw std::invalid_argument("limit_samples: representations have different ranks");
  SampleSet out;
  for (const Word& w : words) {
    LimitSample s = limit_sample(geo_rep, lin_rep, w);
    const bool dup = std::any_of(out.begin(), out.end(), [&](const LimitSample& o) { return same_base(o, s); });
    if (!dup) out.push_back(std::move(s));
  }
  return out;
}

double cocycle_beta(const Representation& lin_rep, const Word& g, const LimitSample& s) {
  if (s.line.norm() == 0.0) throw std::invalid_argument("cocycle_beta: zero line");
  double log_norm = 0.0;
  apply_word(lin_rep, g, s.line, &log_norm);
  return log_norm;
}

double cocycle_beta_bar(const Representation& lin_rep, const Word& g, const LimitSample& s) {
  if (s.covector.norm() == 0.0) throw std::invalid_argument("cocycle_beta_bar: zero covector");
  double log_norm = 0.0;
  apply_word_dual(lin_rep, g, s.covector, &log_norm);
  return log_norm;
}

double gromov_G(const Vec& theta, const Vec& v) {
  const double pairing = std::abs(theta.dot(v));
  if (pairing == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(pairing / (theta.norm() * v.norm()));
}

namespace {

void require_x4(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
  if (same_base(x, t) || same_base(y, z)) throw DegenerateTuple("cross ratio: need x != t and y != z");
}

double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / scale;
}

}  // namespace

double cross_ratio(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
  require_x4(x, y, z, t);
  const double phi_u = x.covector.dot(y.line);
  const double psi_u = z.covector.dot(y.line);
  const double psi_v = z.covector.dot(t.line);
  const double phi_v = x.covector.dot(t.line);
  const double floor = 1e-13 * std::max(1.0, y.line.norm() * t.line.norm());
  if (std::abs(psi_u) <= floor || std::abs(phi_v) <= floor)
    throw DegenerateTuple("cross ratio: transversality fails for " + x.word.str() + "," + y.word.str() + "," +
                          z.word.str() + "," + t.word.str());
  return (phi_u / psi_u) * (psi_v / phi_v);
}

double cross_ratio_from_gromov(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t) {
  require_x4(x, y, z, t);
  const double zy = gromov_bracket(z, y);
  const double xt = gromov_bracket(x, t);
  if (!std::isfinite(zy) || !std::isfinite(xt)) throw DegenerateTuple("gromov cross ratio: transversality fails");
  return std::exp(gromov_bracket(x, y) - zy + gromov_bracket(z, t) - xt);
}

double classical_cross_ratio(double x, double y, double z, double t) {
  return ((y - x) * (t - z)) / ((y - z) * (t - x));
}

bool AxiomReport::passed() const { return worst() <= tol; }

double AxiomReport::worst() const {
  return std::max({symmetry, normalization, vanishing, cocycle_first, cocycle_second});
}

double pairing_separation(const LimitSample& a, const LimitSample& b) {
  const double ab = std::abs(a.covector.dot(b.line)) / (a.covector.norm() * b.line.norm());
  const double ba = std::abs(b.covector.dot(a.line)) / (b.covector.norm() * a.line.norm());
  return std::min(ab, ba);
}

bool well_separated(const SampleSet& samples, const std::vector<std::size_t>& idx, double min_pairing) {
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return false;
      if (pairing_separation(samples.at(idx[i]), samples.at(idx[j])) < min_pairing) return false;
    }
  return true;
}

namespace {

constexpr std::size_t kMaxDraws = 1000;

// m indices in random order, each well separated from the earlier ones.
std::vector<std::size_t> draw_separated(const SampleSet& samples, std::size_t m, std::mt19937_64& rng,
                                        double min_pairing) {
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> chosen;
    for (std::size_t i : order) {
      const bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) {
        return pairing_separation(samples[i], samples[j]) >= min_pairing;
      });
      if (ok) chosen.push_back(i);
      if (chosen.size() == m) return chosen;
    }
  }
  throw std::invalid_argument("too few well-separated samples for " + std::to_string(m) + " points");
}

}  // namespace

std::vector<std::array<std::size_t, 5>> random_five_tuples(const SampleSet& samples, std::size_t count,
                                                            std::uint64_t seed, double min_pairing) {
  if (samples.size() < 5) throw std::invalid_argument("random_five_tuples: need at least five samples");
  std::mt19937_64 rng(seed);
  std::vector<std::array<std::size_t, 5>> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto t = draw_separated(samples, 5, rng, min_pairing);
    out.push_back({t[0], t[1], t[2], t[3], t[4]});
  }
  return out;
}

AxiomReport axiom_check(const CrossRatioFn& b, const SampleSet& samples,
                        const std::vector<std::array<std::size_t, 5>>& tuples, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("axiom_check: tol must be positive");
  AxiomReport r;
  r.tol = tol;
  r.tuples = tuples.size();
  for (const auto& idx : tuples) {
    const auto& x = samples.at(idx[0]);
    const auto& y = samples.at(idx[1]);
    const auto& z = samples.at(idx[2]);
    const auto& t = samples.at(idx[3]);
    const auto& w = samples.at(idx[4]);
    const double bxyzt = b(x, y, z, t);
    r.symmetry = std::max(r.symmetry, rel_diff(bxyzt, b(z, t, x, y)));
    r.normalization = std::max({r.normalization, std::abs(b(x, y, x, t) - 1.0), std::abs(b(x, y, z, y) - 1.0)});
    double vanish = std::max(std::abs(b(x, x, z, t)), std::abs(b(x, y, z, z)));
    // Distinct points: b must not vanish (its size alone says nothing).
    if (!(std::abs(bxyzt) > 0.0) || !std::isfinite(bxyzt)) vanish = std::max(vanish, 1.0);
    r.vanishing = std::max(r.vanishing, vanish);
    r.cocycle_first = std::max(r.cocycle_first, rel_diff(bxyzt, b(x, y, z, w) * b(x, w, z, t)));
    r.cocycle_second = std::max(r.cocycle_second, rel_diff(bxyzt, b(x, y, w, t) * b(w, y, z, t)));
  }
  return r;
}

ChiResult chi_p_det(const CrossRatioFn& b, const SampleSet& samples, const std::vector<std::size_t>& e,
                    const std::vector<std::size_t>& u) {
  if (e.size() != u.size() || e.size() < 2) throw std::invalid_argument("chi_p_det: need p+1 >= 2 indices on each side");
  const std::size_t p = e.size() - 1;
  auto base = [&](std::size_t i) -> const LimitSample& { return samples.at(i); };
  for (std::size_t i = 1; i <= p; ++i) {
    if (same_base(base(e[i]), base(u[0])) || same_base(base(u[i]), base(e[0])))
      throw DegenerateTuple("chi_p_det: tuple is not generic");
    for (std::size_t j = i + 1; j <= p; ++j)
      if (same_base(base(e[i]), base(e[j])) || same_base(base(u[i]), base(u[j])))
        throw DegenerateTuple("chi_p_det: repeated entries");
  }
  Mat m(p, p);
  for (std::size_t i = 1; i <= p; ++i)
    for (std::size_t j = 1; j <= p; ++j) m(i - 1, j - 1) = b(base(e[i]), base(u[j]), base(e[0]), base(u[0]));
  ChiResult r;
  r.det = p == 1 ? m(0, 0) : m.fullPivLu().determinant();
  r.row_norm_product = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) r.row_norm_product *= m.row(i).cwiseAbs().maxCoeff();
  return r;
}

RankResult rank_estimate(const CrossRatioFn& b, const SampleSet& samples, int p_max, int trials, double tol,
                         std::uint64_t seed, double min_pairing) {
  if (p_max < 1 || trials < 1) throw std::invalid_argument("rank_estimate: p_max and trials must be positive");
  if (samples.size() < static_cast<std::size_t>(2 * (p_max + 1)))
    throw std::invalid_argument("rank_estimate: need at least 2(p_max+1) samples");
  std::mt19937_64 rng(seed);
  RankResult out;
  for (int p = 1; p <= p_max; ++p) {
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const auto all = draw_separated(samples, 2 * static_cast<std::size_t>(p + 1), rng, min_pairing);
      std::vector<std::size_t> e(all.begin(), all.begin() + p + 1);
      std::vector<std::size_t> u(all.begin() + p + 1, all.begin() + 2 * (p + 1));
      worst = std::max(worst, chi_p_det(b, samples, e, u).scaled());
    }
    out.max_scaled_chi.push_back(worst);
    if (worst <= tol) {
      out.rank = p - 1;
      return out;
    }
  }
  return out;
}

int line_span_dimension(const SampleSet& samples) {
  if (samples.empty()) return 0;
  Mat m(samples.front().line.size(), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = samples[i].line;
  const Vec s = Eigen::JacobiSVD<Mat>(m).singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++r;
  return r;
}

double holder_upper_bound(const Representation& geo_rep, const Representation& lin_rep, const std::vector<Word>& words) {
  if (words.empty()) throw std::invalid_argument("holder_upper_bound: no words");
  const Representation wedge2 = lin_rep.dim() >= 3 ? exterior_power_rep(lin_rep, 2) : lin_rep;
  double best = std::numeric_limits<double>::infinity();
  for (const Word& w : words) {
    const double len = translation_length(evaluate(geo_rep, w));
    const double first = word_first_gap(lin_rep, wedge2, w);
    const double last = word_first_gap(lin_rep, wedge2, w.inverse());
    best = std::min(best, std::min(first, last) / len);
  }
  return best;
}

double holder_upper_bound_flag(const Representation& geo_rep, const Representation& lin_rep,
                               const std::vector<Word>& words) {
  if (words.empty()) throw std::invalid_argument("holder_upper_bound_flag: no words");
  const ExteriorTower tower(lin_rep);
  double best = std::numeric_limits<double>::infinity();
  for (const Word& w : words) {
    const double len = translation_length(evaluate(geo_rep, w));
    const auto lambda = word_jordan_projection(tower, w);
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i) best = std::min(best, (lambda[i] - lambda[i + 1]) / len);
  }
  return best;
}

std::vector<HolderPair> holder_pairs(const SampleSet& samples, const HypPoint& o, std::size_t max_pairs,
                                     std::uint64_t seed) {
  std::vector<HolderPair> out;
  auto make = [&](std::size_t i, std::size_t j) {
    return HolderPair{visual_distance(samples[i].base, samples[j].base, o),
                      projective_distance(samples[i].line, samples[j].line)};
  };
  const std::size_t n = samples.size();
  if (n < 2) return out;
  if (n * (n - 1) / 2 <= max_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.push_back(make(i, j));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (out.size() < max_pairs) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i != j) out.push_back(make(i, j));
  }
  return out;
}

HolderFit holder_exponent_fit(const std::vector<HolderPair>& pairs) {
  if (pairs.size() < 100) throw std::invalid_argument("holder_exponent_fit: need at least 100 pairs");
  const double width = std::log(2.0);
  struct Point {
    double x, y;
  };
  std::vector<Point> pts;
  for (const auto& p : pairs) {
    if (!(p.visual > 0.0) || !(p.projective > 0.0)) continue;
    pts.push_back({-std::log(p.visual), -std::log(p.projective)});
  }
  if (pts.size() < 100) throw std::invalid_argument("holder_exponent_fit: need at least 100 pairs with distinct points");

  double xmin = pts.front().x, xmax = pts.front().x;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  HolderFit fit;
  const int nbins = static_cast<int>(std::floor((xmax - xmin) / width)) + 1;
  std::vector<HolderBin> bins(nbins);
  std::vector<Point> env(nbins, {0.0, std::numeric_limits<double>::infinity()});
  for (int b = 0; b < nbins; ++b) bins[b].x = xmin + (b + 0.5) * width;
  for (const auto& p : pts) {
    const int b = std::min(nbins - 1, static_cast<int>((p.x - xmin) / width));
    ++bins[b].count;
    if (p.y < env[b].y) env[b] = p;
  }
  std::vector<Point> kept;
  for (int b = 0; b < nbins; ++b) {
    if (bins[b].count == 0) continue;
    bins[b].envelope = env[b].y;
    fit.bins.push_back(bins[b]);
    if (bins[b].count >= 2) kept.push_back(env[b]);
  }
  if (kept.size() < 3 || kept.back().x - kept.front().x < 3.0 * width) {
    fit.insufficient_spread = true;
    if (kept.size() < 2) throw std::invalid_argument("holder_exponent_fit: insufficient spread in log delta");
  }
  // Infimum chord slope of the envelope within the small-delta half of the
  // range, over chords spanning at least two dyadic scales.
  const double mid = kept.front().x + 0.5 * (kept.back().x - kept.front().x);
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i].x < mid) continue;
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (kept[j].x - kept[i].x < 2.0 * width) continue;
      alpha = std::min(alpha, (kept[j].y - kept[i].y) / (kept[j].x - kept[i].x));
    }
  }
  if (!std::isfinite(alpha)) {
    // Range too short for the tail rule: fall back to the full-range chord.
    alpha = (kept.back().y - kept.front().y) / (kept.back().x - kept.front().x);
    fit.insufficient_spread = true;
  }
  fit.alpha = alpha;
  return fit;
}

void write_samples_csv(std::ostream& os, const SampleSet& samples) {
  if (samples.empty()) {
    os << "word\n";
    return;
  }
  const auto kb = samples.front().base.coords().size();
  const auto d = samples.front().line.size();
  os << "word";
  for (Eigen::Index i = 0; i < kb; ++i) os << ",base_" << i;
  for (Eigen::Index i = 0; i < d; ++i) os << ",line_" << i;
  for (Eigen::Index i = 0; i < d; ++i) os << ",covector_" << i;
  os << '\n';
  os.precision(17);
  for (const auto& s : samples) {
    os << s.word.str();
    for (Eigen::Index i = 0; i < kb; ++i) os << ',' << s.base.coords()(i);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << s.line(i);
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << s.covector(i);
    os << '\n';
  }
}

BenoistLimitExperiment benoist_limit_experiment(const Representation& geo_rep, const Representation& lin_rep,
                                                const Word& g, const Word& h, int n_max) {
  BenoistLimitExperiment out;
  auto power = [](const Word& w, int n) {
    Word acc;
    for (int i = 0; i < n; ++i) acc = multiply(acc, w);
    return acc;
  };
  for (int n = 1; n <= n_max; ++n) {
    const Word gn = power(g, n), hn = power(h, n);
    const double v = word_lambda1(lin_rep, multiply(gn, hn)) - word_lambda1(lin_rep, gn) - word_lambda1(lin_rep, hn);
    out.values.push_back(std::exp(v));
  }
  const auto g_plus = limit_sample(geo_rep, lin_rep, g);
  const auto g_minus = limit_sample(geo_rep, lin_rep, g.inverse());
  const auto h_plus = limit_sample(geo_rep, lin_rep, h);
  const auto h_minus = limit_sample(geo_rep, lin_rep, h.inverse());
  out.cross_ratio_value = std::abs(cross_ratio(g_minus, h_plus, h_minus, g_plus));
  return out;
}

}  // namespace rigidity
