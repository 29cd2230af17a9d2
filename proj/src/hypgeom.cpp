#include "rigidity/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rigidity/spectral.hpp"

namespace rigidity {

double lorentz(const Vec& u, const Vec& v) {
  if (u.size() != v.size() || u.size() < 2) throw std::invalid_argument("lorentz: dimension mismatch");
  return u(0) * v(0) - u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

HypPoint::HypPoint(Vec coords) : c_(std::move(coords)) {
  if (c_.size() < 3) throw std::invalid_argument("HypPoint: need k >= 2");
  if (!(c_(0) > 0.0)) throw std::invalid_argument("HypPoint: p0 must be positive");
  if (std::abs(lorentz(c_, c_) - 1.0) > kHypTol * c_(0) * c_(0))
    throw std::invalid_argument("HypPoint: <p,p> != 1");
}

HypPoint HypPoint::origin(int k) { return HypPoint(Vec::Unit(k + 1, 0)); }

HypPoint HypPoint::from_direction(const Vec& u, double s) {
  Vec c(u.size() + 1);
  c(0) = std::cosh(s);
  c.tail(u.size()) = std::sinh(s) * unit(u);
  return HypPoint(std::move(c));
}

BoundaryPoint::BoundaryPoint(Vec coords) : c_(std::move(coords)) {
  if (c_.size() < 3) throw std::invalid_argument("BoundaryPoint: need k >= 2");
  if (c_(0) == 0.0) throw std::invalid_argument("BoundaryPoint: coords0 must be nonzero");
  c_ /= c_(0);
  if (std::abs(lorentz(c_, c_)) > kHypTol) throw std::invalid_argument("BoundaryPoint: vector is not null");
}

BoundaryPoint BoundaryPoint::from_direction(const Vec& u) {
  Vec c(u.size() + 1);
  c(0) = 1.0;
  c.tail(u.size()) = unit(u);
  return BoundaryPoint(std::move(c));
}

double hyp_distance(const HypPoint& p, const HypPoint& q) {
  return std::acosh(std::max(1.0, lorentz(p.coords(), q.coords())));
}

HypPoint apply(const Mat& m, const HypPoint& p) {
  Vec c = m * p.coords();
  // m is defined up to sign; re-project onto the upper sheet.
  c /= std::copysign(std::sqrt(lorentz(c, c)), c(0));
  return HypPoint(std::move(c));
}

BoundaryPoint apply(const Mat& m, const BoundaryPoint& x) {
  Vec c = m * x.coords();
  // Re-project onto the null cone.
  c /= c(0);
  c.tail(c.size() - 1).normalize();
  return BoundaryPoint(std::move(c));
}

double busemann(const BoundaryPoint& z, const HypPoint& p, const HypPoint& q) {
  return std::log(lorentz(p.coords(), z.coords()) / lorentz(q.coords(), z.coords()));
}

HypPoint geodesic_point(const BoundaryPoint& x, const BoundaryPoint& y, double s) {
  const double xy = lorentz(x.coords(), y.coords());
  if (!(xy > 0.0)) throw std::invalid_argument("geodesic_point: endpoints coincide");
  const double norm = std::sqrt(2.0 * xy);
  return HypPoint((std::exp(s) * x.coords() + std::exp(-s) * y.coords()) / norm);
}

double gromov_product(const BoundaryPoint& x, const BoundaryPoint& y, const HypPoint& o) {
  const double xy = lorentz(x.coords(), y.coords());
  if (!(xy > kHypTol)) throw std::invalid_argument("gromov_product: points coincide");
  return 0.5 * std::log(2.0 * lorentz(o.coords(), x.coords()) * lorentz(o.coords(), y.coords()) / xy);
}

double visual_distance(const BoundaryPoint& x, const BoundaryPoint& y, const HypPoint& o) {
  const double xy = std::max(0.0, lorentz(x.coords(), y.coords()));
  return std::sqrt(xy / (2.0 * lorentz(o.coords(), x.coords()) * lorentz(o.coords(), y.coords())));
}

double lorentz_residual(const Mat& m) {
  const int k = static_cast<int>(m.rows()) - 1;
  Mat j = -Mat::Identity(k + 1, k + 1);
  j(0, 0) = 1.0;
  return (m.transpose() * j * m - j).norm() / m.squaredNorm();
}

namespace {

void require_lorentz(const Mat& m) {
  if (m.rows() < 3) throw std::invalid_argument("need a Lorentz matrix of size >= 3");
  if (lorentz_residual(m) > kLorentzTol) throw std::invalid_argument("matrix does not preserve the Lorentz form");
}

Mat lorentz_inverse(const Mat& m) {
  Mat j = -Mat::Identity(m.rows(), m.rows());
  j(0, 0) = 1.0;
  return j * m.transpose() * j;
}

// Lorentz boost taking o to (1,0,...,0).
Mat boost_to_origin(const HypPoint& o) {
  const Vec& c = o.coords();
  const Eigen::Index k = c.size() - 1;
  const Vec sp = c.tail(k);
  const double sh = sp.norm();
  Mat t = Mat::Identity(k + 1, k + 1);
  if (sh == 0.0) return t;
  const Vec u = sp / sh;
  const double ch = c(0);
  t(0, 0) = ch;
  t.block(0, 1, 1, k) = -sh * u.transpose();
  t.block(1, 0, k, 1) = -sh * u;
  t.block(1, 1, k, k) += (ch - 1.0) * u * u.transpose();
  return t;
}

}  // namespace

double translation_length(const ProjectiveMatrix& m) {
  require_lorentz(m.matrix());
  return std::max(0.0, top_log_modulus(m.matrix()));
}

FixedPoints boundary_fixed_points(const ProjectiveMatrix& m) {
  require_lorentz(m.matrix());
  const auto fwd = proximality_data(m);
  const auto bwd = proximality_data(ProjectiveMatrix::from_normalized(lorentz_inverse(m.matrix())));
  if (!fwd || !bwd) throw std::invalid_argument("boundary_fixed_points: isometry is not hyperbolic");
  return {BoundaryPoint(fwd->attracting_line), BoundaryPoint(bwd->attracting_line)};
}

double contraction_rate_check(const ProjectiveMatrix& pm, const BoundaryPoint& x, const HypPoint& o, int iterations) {
  if (iterations < 4) throw std::invalid_argument("contraction_rate_check: need at least 4 iterations");
  const auto fp = boundary_fixed_points(pm);
  const auto prox = proximality_data(pm);
  const Mat& m = pm.matrix();
  const Vec& plus = fp.attracting.coords();
  const Vec& minus = fp.repelling.coords();

  // x = a g+ + s with s in the repelling hyperplane <., g-> = 0.
  const double pm_pair = lorentz(plus, minus);
  const double a = lorentz(x.coords(), minus) / pm_pair;
  if (std::abs(a) <= 1e-12) throw std::invalid_argument("contraction_rate_check: x is the repelling fixed point");
  Vec s = x.coords() - a * plus;
  if (s.norm() <= 1e-12) throw std::invalid_argument("contraction_rate_check: x is the attracting fixed point");

  // Work in coordinates centered at o, where delta = |u - w| / 2 for the
  // unit spatial directions u, w of the two boundary points.
  const Mat t = boost_to_origin(o);
  const Vec plus_o = t * plus;
  const Vec w = plus_o.tail(plus_o.size() - 1) / plus_o(0);

  const double log_mu = std::log(std::abs(prox->top_eigenvalue));
  double log_s = std::log(s.norm());
  s.normalize();
  std::vector<double> ns, logs;
  for (int n = 1; n <= iterations; ++n) {
    Vec next = m * s;
    next -= (lorentz(next, minus) / pm_pair) * plus;
    const double nn = next.norm();
    log_s += std::log(nn);
    s = next / nn;
    // m^n x is proportional to g+ + eps * s with eps = |m^n s| / |a mu^n|.
    const double log_eps = log_s - std::log(std::abs(a)) - n * log_mu;
    const double eps = std::exp(log_eps) * (a < 0 ? -1.0 : 1.0) * (prox->top_eigenvalue < 0 && n % 2 ? -1.0 : 1.0);
    const Vec so = t * s;
    // y = (plus_o + eps so) / (plus_o(0) + eps so(0)); u - w = eps (so_sp - so0 w) / y0.
    const Vec diff = so.tail(so.size() - 1) - so(0) * w;
    const double y0 = plus_o(0) + eps * so(0);
    const double log_delta = log_eps + std::log(diff.norm()) - std::log(std::abs(y0)) - std::log(2.0);
    if (!std::isfinite(log_delta)) break;
    ns.push_back(n);
    logs.push_back(log_delta);
  }
  if (ns.size() < 4) throw std::runtime_error("contraction_rate_check: too few iterations attained");
  const std::size_t start = ns.size() / 2;
  return fit_slope(std::vector<double>(ns.begin() + start, ns.end()),
                   std::vector<double>(logs.begin() + start, logs.end()));
}

}  // namespace rigidity
