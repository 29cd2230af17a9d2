#include "rigidity/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace rigidity {

namespace {

Eigen::VectorXcd eigenvalues_or_throw(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m, false);
  if (es.info() != Eigen::Success) {
    Eigen::EigenSolver<Mat> full(m, true);
    double residual = std::numeric_limits<double>::infinity();
    if (full.info() == Eigen::Success) {
      const Eigen::MatrixXcd mc = m.cast<std::complex<double>>();
      residual = (mc * full.eigenvectors() - full.eigenvectors() * full.eigenvalues().asDiagonal()).norm();
    }
    throw EigensolverError("eigensolver did not converge", residual);
  }
  return es.eigenvalues();
}

// Dominant real eigenvector of m, polished by a few power steps.
Vec dominant_eigenvector(const Mat& m, const Eigen::EigenSolver<Mat>& es, Eigen::Index idx) {
  Vec v = es.eigenvectors().col(idx).real();
  if (v.norm() == 0.0) v = es.eigenvectors().col(idx).imag();
  v.normalize();
  for (int it = 0; it < 4; ++it) {
    Vec w = m * v;
    const double n = w.norm();
    if (!(n > 0.0) || !std::isfinite(n)) break;
    w /= n;
    if (w.dot(v) < 0) w = -w;
    v = w;
  }
  return canonical_sign(v);
}

}  // namespace

JordanVector::JordanVector(std::vector<double> values) : values_(std::move(values)) {
  if (!std::is_sorted(values_.begin(), values_.end(), std::greater<>()))
    throw std::invalid_argument("JordanVector: values must be descending");
}

JordanVector JordanVector::opposite() const {
  std::vector<double> out(values_.rbegin(), values_.rend());
  for (double& x : out) x = -x;
  return JordanVector(std::move(out));
}

JordanVector jordan_projection(const ProjectiveMatrix& m) {
  const Eigen::VectorXcd ev = eigenvalues_or_throw(m.matrix());
  std::vector<double> logs(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) logs[i] = std::log(std::abs(ev(i)));
  std::sort(logs.begin(), logs.end(), std::greater<>());
  // Remove the drift left by |det| = 1 normalization.
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
  for (double& x : logs) x -= mean;
  return JordanVector(std::move(logs));
}

double top_log_modulus(const Mat& m) {
  const Eigen::VectorXcd ev = eigenvalues_or_throw(m);
  return std::log(ev.cwiseAbs().maxCoeff());
}

std::optional<ProximalData> proximality_data(const ProjectiveMatrix& pm, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("proximality_data: tol must be positive");
  const Mat& m = pm.matrix();
  if (m.rows() < 2) return std::nullopt;

  Eigen::EigenSolver<Mat> es(m, true);
  if (es.info() != Eigen::Success) throw EigensolverError("eigensolver did not converge", 0.0);
  const Eigen::VectorXcd ev = es.eigenvalues();

  std::vector<Eigen::Index> order(ev.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return std::abs(ev(a)) > std::abs(ev(b)); });
  const std::complex<double> top = ev(order[0]);
  const double gap = std::log(std::abs(top)) - std::log(std::abs(ev(order[1])));
  if (!(gap > tol)) return std::nullopt;
  if (std::abs(top.imag()) > 1e-10 * std::abs(top)) return std::nullopt;

  ProximalData out;
  out.gap = gap;
  out.top_eigenvalue = top.real();
  out.attracting_line = dominant_eigenvector(m, es, order[0]);

  const Mat mt = m.transpose();
  Eigen::EigenSolver<Mat> est(mt, true);
  if (est.info() != Eigen::Success) throw EigensolverError("eigensolver did not converge", 0.0);
  Eigen::Index it = 0;
  est.eigenvalues().cwiseAbs().maxCoeff(&it);
  out.repelling_covector = dominant_eigenvector(mt, est, it);
  return out;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_slope: need at least two points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

BenoistRate benoist_rate(const ProjectiveMatrix& pm, const Vec& v, int iterations) {
  if (iterations < 4) throw std::invalid_argument("benoist_rate: need at least 4 iterations");
  const auto prox = proximality_data(pm);
  if (!prox) throw std::invalid_argument("benoist_rate: matrix is not proximal");
  const Mat& m = pm.matrix();
  const Vec& e = prox->attracting_line;
  const Vec& theta = prox->repelling_covector;
  if (v.size() != m.rows()) throw std::invalid_argument("benoist_rate: dimension mismatch");

  // Split v = a e + r with r in the repelling hyperplane ker(theta).
  const double a = theta.dot(v) / theta.dot(e);
  if (std::abs(theta.dot(v)) <= 1e-12 * v.norm()) throw std::invalid_argument("benoist_rate: v lies in the repelling hyperplane");
  Vec r = v - a * e;
  if (r.norm() <= 1e-12 * v.norm()) throw std::invalid_argument("benoist_rate: v lies on the attracting line");

  double log_r = std::log(r.norm());
  r.normalize();
  const double log_a0 = std::log(std::abs(a));
  const double log_mu = std::log(std::abs(prox->top_eigenvalue));
  const double sign_mu = prox->top_eigenvalue < 0 ? -1.0 : 1.0;
  double sign_a = a < 0 ? -1.0 : 1.0;

  std::vector<double> ns, logs;
  BenoistRate out;
  for (int n = 1; n <= iterations; ++n) {
    Vec next = m * r;
    // Keep the iterate inside ker(theta) against round-off drift toward e.
    next -= (theta.dot(next) / theta.dot(e)) * e;
    const double nn = next.norm();
    if (!(nn > 0.0) || !std::isfinite(nn)) {
      out.short_run = true;
      break;
    }
    log_r += std::log(nn);
    r = next / nn;
    sign_a *= sign_mu;

    // m^n v / |a mu^n| = sign * e + t r with t = |m^n r| / |a mu^n|.
    const double log_t = log_r - (log_a0 + n * log_mu);
    const double t = std::exp(std::min(log_t, 700.0));
    const Vec perp = r - r.dot(e) * e;
    const Vec u = sign_a * e + t * r;
    double log_d;
    if (log_t > 700.0)
      log_d = std::log(perp.norm()) - std::log(r.norm());
    else
      log_d = log_t + std::log(perp.norm()) - std::log(u.norm());
    if (!std::isfinite(log_d)) {
      out.short_run = true;
      break;
    }
    ns.push_back(n);
    logs.push_back(log_d);
    out.iterations = n;
  }
  if (ns.size() < 4) throw std::runtime_error("benoist_rate: too few iterations attained");
  // Fit on the second half, past the transient from lower eigenvalues.
  const std::size_t start = ns.size() / 2;
  out.slope = fit_slope(std::vector<double>(ns.begin() + start, ns.end()),
                        std::vector<double>(logs.begin() + start, logs.end()));
  return out;
}

}  // namespace rigidity
