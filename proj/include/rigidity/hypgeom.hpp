#pragma once

#include <utility>

#include "rigidity/linalg.hpp"
#include "rigidity/projective_matrix.hpp"

namespace rigidity {

// Lorentz pairing <u,v> = u0 v0 - sum_{i>=1} ui vi.
double lorentz(const Vec& u, const Vec& v);

inline constexpr double kHypTol = 1e-10;

// Point of the hyperboloid <p,p> = 1, p0 > 0.
class HypPoint {
 public:
  explicit HypPoint(Vec coords);
  static HypPoint origin(int k);
  // Point at distance s from o in the unit direction u of R^k.
  static HypPoint from_direction(const Vec& u, double s);

  const Vec& coords() const { return c_; }
  int k() const { return static_cast<int>(c_.size()) - 1; }

 private:
  Vec c_;
};

// Null vector normalized to coords0 = 1.
class BoundaryPoint {
 public:
  explicit BoundaryPoint(Vec coords);
  // (1, u) for a unit direction u of R^k.
  static BoundaryPoint from_direction(const Vec& u);

  const Vec& coords() const { return c_; }
  int k() const { return static_cast<int>(c_.size()) - 1; }

 private:
  Vec c_;
};

double hyp_distance(const HypPoint& p, const HypPoint& q);

// Image of a point under a Lorentz matrix.
HypPoint apply(const Mat& m, const HypPoint& p);
BoundaryPoint apply(const Mat& m, const BoundaryPoint& x);

// B_z(p,q) = log(<p,z> / <q,z>); positive when q is closer to z.
double busemann(const BoundaryPoint& z, const HypPoint& p, const HypPoint& q);

// Point at signed parameter s along the geodesic from y (s -> -inf) to x (s -> +inf).
HypPoint geodesic_point(const BoundaryPoint& x, const BoundaryPoint& y, double s);

// [x,y]_o = 1/2 log(2 <o,x><o,y> / <x,y>). Throws std::invalid_argument when x = y.
double gromov_product(const BoundaryPoint& x, const BoundaryPoint& y, const HypPoint& o);

// delta_o(x,y) = exp(-[x,y]_o); zero when x = y.
double visual_distance(const BoundaryPoint& x, const BoundaryPoint& y, const HypPoint& o);

// Relative residual |m^T J m - J| / |m|^2.
double lorentz_residual(const Mat& m);

inline constexpr double kLorentzTol = 1e-8;

// lambda_1 of a Lorentz matrix (0 for elliptic and parabolic elements).
double translation_length(const ProjectiveMatrix& m);

struct FixedPoints {
  BoundaryPoint attracting;
  BoundaryPoint repelling;
};

// Attracting and repelling boundary fixed points of a hyperbolic isometry.
FixedPoints boundary_fixed_points(const ProjectiveMatrix& m);

// Slope of n -> log delta_o(m^n x, m_+) fitted over n = 1..iterations.
double contraction_rate_check(const ProjectiveMatrix& m, const BoundaryPoint& x, const HypPoint& o, int iterations);

}  // namespace rigidity
