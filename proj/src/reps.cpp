#include "rigidity/reps.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

#include "rigidity/spectral.hpp"

namespace rigidity {

Representation::Representation(std::vector<ProjectiveMatrix> generators, std::string label)
    : generators_(std::move(generators)), label_(std::move(label)) {
  if (generators_.empty()) throw std::invalid_argument("Representation: no generators");
  dim_ = generators_.front().dim();
  for (const auto& g : generators_) {
    if (g.dim() != dim_) throw std::invalid_argument("Representation: generator dimensions differ");
    inverses_.push_back(g.matrix().inverse());
  }
}

Representation::Representation(std::vector<ProjectiveMatrix> generators, std::vector<Mat> inverses, std::string label)
    : generators_(std::move(generators)), inverses_(std::move(inverses)), label_(std::move(label)) {
  if (generators_.empty()) throw std::invalid_argument("Representation: no generators");
  if (inverses_.size() != generators_.size()) throw std::invalid_argument("Representation: one inverse per generator");
  dim_ = generators_.front().dim();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Mat& g = generators_[i].matrix();
    if (g.rows() != dim_ || inverses_[i].rows() != dim_ || inverses_[i].cols() != dim_)
      throw std::invalid_argument("Representation: generator dimensions differ");
    const double residual = (g * inverses_[i] - Mat::Identity(dim_, dim_)).norm() / (g.norm() * inverses_[i].norm());
    if (!(residual <= 1e-10)) throw std::invalid_argument("Representation: supplied inverse does not match");
  }
}

const Mat& Representation::letter_image(Letter l) const {
  const int g = l < 0 ? -l : l;
  if (g < 1 || g > rank()) throw std::out_of_range("Representation: letter outside the generating set");
  return l > 0 ? generators_[g - 1].matrix() : inverses_[g - 1];
}

ProjectiveMatrix evaluate(const Representation& rep, const Word& w) {
  if (w.empty()) throw std::invalid_argument("evaluate: empty word");
  Mat acc = rep.letter_image(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = acc * rep.letter_image(w[i]);
  return ProjectiveMatrix::from_normalized(std::move(acc));
}

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<std::vector<int>> subsets(int d, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == d - n + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// f must be multiplicative and preserve |det| = 1, so images of the exact
// inverses are exact inverses and no determinant is recomputed.
template <class F>
Representation map_generators(const Representation& rep, F f, std::string label) {
  std::vector<ProjectiveMatrix> gens;
  std::vector<Mat> inverses;
  for (int i = 1; i <= rep.rank(); ++i) {
    gens.push_back(ProjectiveMatrix::from_normalized(f(rep.letter_image(i))));
    inverses.push_back(f(rep.letter_image(-i)));
  }
  return Representation(std::move(gens), std::move(inverses), std::move(label));
}

}  // namespace

namespace {

// Applies the letter images in the given order, transposed if asked,
// normalizing after each step.
template <typename It>
Vec apply_letters(const Representation& rep, It first, It last, const Vec& v, bool transpose, double* log_norm) {
  if (v.size() != rep.dim()) throw std::invalid_argument("apply_word: dimension mismatch");
  const double n0 = v.norm();
  if (!(n0 > 0.0)) throw std::invalid_argument("apply_word: zero vector");
  Vec u = v / n0;
  double acc = 0.0;
  for (; first != last; ++first) {
    u = transpose ? Vec(rep.letter_image(*first).transpose() * u) : Vec(rep.letter_image(*first) * u);
    const double n = u.norm();
    acc += std::log(n);
    u /= n;
  }
  if (log_norm) *log_norm += acc;
  return u;
}

}  // namespace

Vec apply_word(const Representation& rep, const Word& w, const Vec& v, double* log_norm) {
  return apply_letters(rep, w.letters().rbegin(), w.letters().rend(), v, false, log_norm);
}

// rep(w)^{-T} = M(l1^-1)^T ... M(ln^-1)^T for w = l1 ... ln.
Vec apply_word_dual(const Representation& rep, const Word& w, const Vec& theta, double* log_norm) {
  const Word inv = w.inverse();
  return apply_letters(rep, inv.letters().begin(), inv.letters().end(), theta, true, log_norm);
}

Mat sym_power_matrix(const Mat& g, int d) {
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("sym_power_matrix: need a 2x2 matrix");
  if (d < 2) throw std::invalid_argument("sym_power_matrix: d must be at least 2");
  const int n = d - 1;
  const std::vector<double> gx{g(0, 0), g(1, 0)};  // image of x
  const std::vector<double> gy{g(0, 1), g(1, 1)};  // image of y
  Mat out(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<double> p{1.0};
    for (int i = 0; i < n - j; ++i) p = poly_mul(p, gx);
    for (int i = 0; i < j; ++i) p = poly_mul(p, gy);
    for (int i = 0; i < d; ++i) out(i, j) = p[i];
  }
  return out;
}

Representation sym_power_rep(const Representation& rep2, int d) {
  if (rep2.dim() != 2) throw std::invalid_argument("sym_power_rep: base representation must have dim 2");
  return map_generators(rep2, [d](const Mat& g) { return sym_power_matrix(g, d); },
                        "sym" + std::to_string(d) + "(" + rep2.label() + ")");
}

Mat exterior_power_matrix(const Mat& g, int n) {
  const int d = static_cast<int>(g.rows());
  if (n < 1 || n > d) throw std::invalid_argument("exterior_power_matrix: need 1 <= n <= d");
  const auto sets = subsets(d, n);
  const int m = static_cast<int>(sets.size());
  Mat out(m, m);
  Mat minor(n, n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) minor(i, j) = g(sets[r][i], sets[c][j]);
      out(r, c) = n == 1 ? minor(0, 0) : minor.partialPivLu().determinant();
    }
  return out;
}

Representation exterior_power_rep(const Representation& rep, int n) {
  if (n < 1 || n > rep.dim() - 1) throw std::invalid_argument("exterior_power_rep: need 1 <= n <= d-1");
  return map_generators(rep, [n](const Mat& g) { return exterior_power_matrix(g, n); },
                        "wedge" + std::to_string(n) + "(" + rep.label() + ")");
}

Mat lorentz_form(int k) {
  Mat j = -Mat::Identity(k + 1, k + 1);
  j(0, 0) = 1.0;
  return j;
}

Mat klein_translation(int k, const SchottkyGenerator& g) {
  if (k < 2) throw std::invalid_argument("klein_translation: k must be at least 2");
  if (g.axis.size() != k) throw std::invalid_argument("klein_translation: axis must lie in R^k");
  const Vec u = unit(g.axis);
  const double ch = std::cosh(g.length), sh = std::sinh(g.length);
  Mat b = Mat::Identity(k + 1, k + 1);
  b(0, 0) = ch;
  b.block(0, 1, 1, k) = sh * u.transpose();
  b.block(1, 0, k, 1) = sh * u;
  b.block(1, 1, k, k) += (ch - 1.0) * u * u.transpose();
  if (g.twist == 0.0) return b;
  if (k < 3) throw std::invalid_argument("klein_translation: twist needs k >= 3");

  // Orthonormal pair spanning a plane orthogonal to the axis.
  std::vector<Vec> basis;
  for (int i = 0; i < k && basis.size() < 2; ++i) {
    Vec e = Vec::Unit(k, i);
    e -= e.dot(u) * u;
    for (const Vec& q : basis) e -= e.dot(q) * q;
    if (e.norm() > 1e-6) basis.push_back(unit(e));
  }
  const Vec& p = basis[0];
  const Vec& q = basis[1];
  Mat rot = Mat::Identity(k + 1, k + 1);
  rot.block(1, 1, k, k) += std::sin(g.twist) * (q * p.transpose() - p * q.transpose()) +
                           (std::cos(g.twist) - 1.0) * (p * p.transpose() + q * q.transpose());
  return b * rot;
}

PingPongCertificate ping_pong_certificate(int k, const std::vector<SchottkyGenerator>& gens) {
  PingPongCertificate cert;
  std::vector<Vec> centers;
  for (const auto& g : gens) {
    if (g.axis.size() != k) throw std::invalid_argument("ping_pong_certificate: axis must lie in R^k");
    if (!(g.length > 0.0)) throw std::invalid_argument("ping_pong_certificate: lengths must be positive");
    // Half-space bounded by the hyperplane orthogonal to the axis at
    // distance length/2 from o; its trace on the sphere is a cap.
    const double r = std::acos(std::tanh(g.length / 2.0));
    const Vec u = unit(g.axis);
    centers.push_back(u);
    centers.push_back(-u);
    cert.cap_radii.push_back(r);
    cert.cap_radii.push_back(r);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      const double angle = std::acos(std::clamp(centers[a].dot(centers[b]), -1.0, 1.0));
      margin = std::min(margin, angle - cert.cap_radii[a] - cert.cap_radii[b]);
    }
  cert.margin = margin;
  cert.ok = margin >= kPingPongMargin;
  return cert;
}

KleinSchottky klein_schottky(int k, const std::vector<SchottkyGenerator>& gens, std::string label) {
  if (gens.empty()) throw std::invalid_argument("klein_schottky: no generators");
  auto cert = ping_pong_certificate(k, gens);
  if (!cert.ok) throw PingPongError("klein_schottky: half-spaces intersect, not a Schottky configuration", cert);
  std::vector<ProjectiveMatrix> mats;
  std::vector<Mat> inverses;
  const Mat j = lorentz_form(k);
  for (const auto& g : gens) {
    Mat m = klein_translation(k, g);
    inverses.push_back(j * m.transpose() * j);
    mats.push_back(ProjectiveMatrix::from_normalized(std::move(m)));
  }
  return {Representation(std::move(mats), std::move(inverses), std::move(label)), std::move(cert)};
}

KleinSchottky random_klein_schottky(int k, int rank, double length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<SchottkyGenerator> gens;
    for (int i = 0; i < rank; ++i) {
      Vec axis(k);
      for (int j = 0; j < k; ++j) axis(j) = normal(rng);
      SchottkyGenerator g{unit(axis), length, 0.0};
      if (k >= 3) g.twist = angle(rng);
      gens.push_back(std::move(g));
    }
    if (ping_pong_certificate(k, gens).ok)
      return klein_schottky(k, gens, "klein" + std::to_string(k) + "-seed" + std::to_string(seed));
  }
  throw PingPongError("random_klein_schottky: no ping-pong configuration found", {});
}

Representation psl2_schottky(const std::vector<double>& angles, const std::vector<double>& lengths,
                             std::string label) {
  if (angles.size() != lengths.size() || angles.empty())
    throw std::invalid_argument("psl2_schottky: need matching nonempty angles and lengths");
  std::vector<SchottkyGenerator> check;
  std::vector<ProjectiveMatrix> gens;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    Vec axis(2);
    axis << std::cos(angles[i]), std::sin(angles[i]);
    check.push_back({axis, lengths[i], 0.0});
    // diag(e^{l/2}, e^{-l/2}) translates along the x2 axis; rotation by psi
    // in SL(2) rotates the Klein axis by 2 psi.
    const double psi = (angles[i] - std::numbers::pi / 2.0) / 2.0;
    Mat r(2, 2);
    r << std::cos(psi), -std::sin(psi), std::sin(psi), std::cos(psi);
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = std::exp(lengths[i] / 2.0);
    d(1, 1) = std::exp(-lengths[i] / 2.0);
    gens.emplace_back(r * d * r.transpose());
  }
  auto cert = ping_pong_certificate(2, check);
  if (!cert.ok) throw PingPongError("psl2_schottky: half-planes intersect", cert);
  return Representation(std::move(gens), std::move(label));
}

Mat psl2_to_so12(const Mat& a) {
  if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("psl2_to_so12: need a 2x2 matrix");
  // X(x) = [[x1, x0 + x2], [x2 - x0, -x1]], det X = x0^2 - x1^2 - x2^2.
  auto embed = [](double x0, double x1, double x2) {
    Mat x(2, 2);
    x << x1, x0 + x2, x2 - x0, -x1;
    return x;
  };
  const Mat ainv = a.inverse();
  Mat out(3, 3);
  for (int j = 0; j < 3; ++j) {
    const Mat x = a * embed(j == 0, j == 1, j == 2) * ainv;
    out(0, j) = (x(0, 1) - x(1, 0)) / 2.0;
    out(1, j) = x(0, 0);
    out(2, j) = (x(0, 1) + x(1, 0)) / 2.0;
  }
  return out;
}

Representation klein_from_psl2(const Representation& rep2) {
  if (rep2.dim() != 2) throw std::invalid_argument("klein_from_psl2: need a dim 2 representation");
  return map_generators(rep2, psl2_to_so12, "klein(" + rep2.label() + ")");
}

Vec rank_one_vec(const Vec& v, const Vec& theta) {
  const Eigen::Index d = v.size();
  Vec out(d * d);
  for (Eigen::Index j = 0; j < d; ++j) out.segment(j * d, d) = theta(j) * v;
  return out;
}

namespace {

Mat attractor_matrix(const Representation& rep, const std::vector<Word>& words) {
  const int d = rep.dim();
  Mat cols(d * d, static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto fwd = proximality_data(evaluate(rep, words[i]));
    const auto bwd = proximality_data(evaluate(rep, words[i].inverse()));
    if (!fwd || !bwd) throw NotProximalError("adjoint: image of " + words[i].str() + " is not biproximal", words[i]);
    // xi*(g+) is the attracting covector of g^-1 (its kernel is g^-1's repelling hyperplane).
    cols.col(static_cast<Eigen::Index>(i)) = unit(rank_one_vec(fwd->attracting_line, bwd->repelling_covector));
  }
  return cols;
}

int span_rank(const Eigen::JacobiSVD<Mat>& svd) {
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > kSpanTol * s(0)) ++r;
  return r;
}

}  // namespace

int adjoint_span_dimension(const Representation& rep, const std::vector<Word>& sample_words) {
  if (sample_words.empty()) throw std::invalid_argument("adjoint_span_dimension: no sample words");
  return span_rank(Eigen::JacobiSVD<Mat>(attractor_matrix(rep, sample_words)));
}

AdjointResult adjoint_irreducible(const Representation& rep, const std::vector<Word>& sample_words) {
  if (sample_words.size() < 2) throw std::invalid_argument("adjoint_irreducible: need at least two sample words");
  const Mat cols = attractor_matrix(rep, sample_words);
  Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
  const int r = span_rank(svd);
  const Eigen::Index half = cols.cols() / 2;
  const int r_half = span_rank(Eigen::JacobiSVD<Mat>(cols.leftCols(half)));
  if (r_half != r)
    throw InsufficientSampling("adjoint_irreducible: span dimension " + std::to_string(r_half) + " on half the samples vs " +
                               std::to_string(r) + " on all");

  AdjointResult out;
  out.span_dim = r;
  out.basis = svd.matrixU().leftCols(r);
  out.singular_values.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());

  const int d = rep.dim();
  auto restrict_ad = [&](const Mat& m, const Mat& minv) {
    Mat restricted(r, r);
    for (int c = 0; c < r; ++c) {
      const Mat t = Eigen::Map<const Mat>(out.basis.col(c).data(), d, d);
      const Mat conj = m * t * minv;
      restricted.col(c) = out.basis.transpose() * Eigen::Map<const Vec>(conj.data(), d * d);
    }
    return restricted;
  };
  std::vector<ProjectiveMatrix> gens;
  std::vector<Mat> inverses;
  for (int i = 1; i <= rep.rank(); ++i) {
    const Mat fwd = restrict_ad(rep.letter_image(i), rep.letter_image(-i));
    ProjectiveMatrix pm(fwd);
    // Same positive rescaling on the inverse.
    inverses.push_back(restrict_ad(rep.letter_image(-i), rep.letter_image(i)) * (fwd.norm() / pm.matrix().norm()));
    gens.push_back(std::move(pm));
  }
  out.rep = Representation(std::move(gens), std::move(inverses), "adjoint(" + rep.label() + ")");
  return out;
}

Representation perturb(const Representation& rep, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw std::invalid_argument("perturb: eps must be nonnegative");
  const std::string label = "perturb(" + rep.label() + ")";
  if (eps == 0.0) return Representation(rep.generators(), label);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<ProjectiveMatrix> gens;
  const int d = rep.dim();
  for (const auto& g : rep.generators()) {
    Mat e(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) e(i, j) = normal(rng);
    const double op = Eigen::JacobiSVD<Mat>(e).singularValues()(0);
    gens.emplace_back(g.matrix() + (eps / op) * e);
  }
  return Representation(std::move(gens), label);
}

Representation conjugate(const Representation& rep, const Mat& c) {
  const Mat cinv = c.inverse();
  return map_generators(rep, [&](const Mat& g) { return Mat(c * g * cinv); }, "conj(" + rep.label() + ")");
}

ExteriorTower::ExteriorTower(const Representation& rep) {
  powers_.push_back(rep);
  for (int n = 2; n <= rep.dim() - 1; ++n) powers_.push_back(exterior_power_rep(rep, n));
}

double word_lambda1(const Representation& rep, const Word& w) { return top_log_modulus(evaluate(rep, w).matrix()); }

double word_lambda_last(const Representation& rep, const Word& w) { return -word_lambda1(rep, w.inverse()); }

double word_first_gap(const Representation& rep, const Representation& wedge2, const Word& w) {
  if (rep.dim() == 2) return 2.0 * word_lambda1(rep, w);
  return 2.0 * word_lambda1(rep, w) - word_lambda1(wedge2, w);
}

std::vector<double> word_jordan_projection(const ExteriorTower& tower, const Word& w) {
  const int d = tower.dim();
  std::vector<double> partial(d + 1, 0.0);
  for (int n = 1; n <= d - 1; ++n) partial[n] = word_lambda1(tower.power(n), w);
  std::vector<double> out(d);
  for (int n = 1; n <= d; ++n) out[n - 1] = partial[n] - partial[n - 1];
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

nlohmann::json to_json(const Representation& rep) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : rep.generators()) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < g.dim(); ++i) {
      std::vector<double> row(g.dim());
      for (int j = 0; j < g.dim(); ++j) row[j] = g(i, j);
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  return {{"dim", rep.dim()}, {"generators", gens}, {"label", rep.label()}};
}

Representation representation_from_json(const nlohmann::json& j) {
  const int d = j.at("dim").get<int>();
  std::vector<ProjectiveMatrix> gens;
  for (const auto& rows : j.at("generators")) {
    if (static_cast<int>(rows.size()) != d) throw std::invalid_argument("representation_from_json: row count mismatch");
    Mat m(d, d);
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(rows[i].size()) != d) throw std::invalid_argument("representation_from_json: column count mismatch");
      for (int k = 0; k < d; ++k) m(i, k) = rows[i][k].get<double>();
    }
    gens.emplace_back(m);
  }
  return Representation(std::move(gens), j.value("label", std::string{}));
}

}  // namespace rigidity
