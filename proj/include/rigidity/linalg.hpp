#pragma once

#include <Eigen/Dense>

namespace rigidity {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Flip sign so the entry of largest modulus is positive; fixes a
// representative for vectors considered up to sign.
inline Vec canonical_sign(Vec v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  if (v(i) < 0) v = -v;
  return v;
}

inline Vec unit(const Vec& v) { return v / v.norm(); }

// Distance on projective space: sine of the angle between two lines.
inline double projective_distance(const Vec& a, const Vec& b) {
  const Vec ua = unit(a);
  const Vec ub = unit(b);
  const Vec perp = ua - ua.dot(ub) * ub;
  return std::min(1.0, perp.norm());
}

}  // namespace rigidity
