#pragma once

#include <cmath>
#include <stdexcept>

#include "rigidity/linalg.hpp"

namespace rigidity {

// Real invertible d x d matrix scaled to |det| = 1, regarded up to sign.
class ProjectiveMatrix {
 public:
  ProjectiveMatrix() = default;
  explicit ProjectiveMatrix(Mat m) : m_(std::move(m)) { normalize(); }

  static ProjectiveMatrix identity(int d) { return ProjectiveMatrix(Mat::Identity(d, d)); }

  // For products and exact inverses of normalized matrices, whose |det| is 1
  // by construction. A computed determinant of a long product is meaningless
  // once the singular values spread beyond 1/eps, so it is not rechecked.
  static ProjectiveMatrix from_normalized(Mat m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("ProjectiveMatrix: matrix must be square");
    if (!m.allFinite()) throw std::domain_error("ProjectiveMatrix: matrix is not finite");
    ProjectiveMatrix out;
    out.m_ = std::move(m);
    return out;
  }

  const Mat& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

  void normalize() {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("ProjectiveMatrix: matrix must be square");
    if (m_.rows() == 0) throw std::invalid_argument("ProjectiveMatrix: empty matrix");
    const double det = m_.fullPivLu().determinant();
    if (!std::isfinite(det) || det == 0.0)
      throw std::domain_error("ProjectiveMatrix: matrix is singular or not finite");
    // Already-normalized input is left bit-for-bit unchanged.
    if (std::abs(std::abs(det) - 1.0) <= 1e-14 * static_cast<double>(m_.rows())) return;
    m_ /= std::pow(std::abs(det), 1.0 / static_cast<double>(m_.rows()));
  }

 private:
  Mat m_;
};

inline ProjectiveMatrix operator*(const ProjectiveMatrix& a, const ProjectiveMatrix& b) {
  return ProjectiveMatrix::from_normalized(a.matrix() * b.matrix());
}

// Equality in PGL: a = +-b up to the given relative tolerance.
inline bool projectively_equal(const Mat& a, const Mat& b, double rel_tol) {
  const double scale = std::max(a.norm(), b.norm());
  return (a - b).norm() <= rel_tol * scale || (a + b).norm() <= rel_tol * scale;
}

}  // namespace rigidity
