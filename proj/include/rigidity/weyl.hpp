#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rigidity/linalg.hpp"

namespace rigidity {

using Rational = boost::rational<long long>;
using RationalVec = std::vector<Rational>;

enum class RootKind { A, B, C, G2 };

// Linear functionals are coefficient vectors on the ambient coordinates
// (a_1, ..., a_m). Kinds A and G2 live on the hyperplane sum a_i = 0, given
// as a constraint row.
struct RootSystem {
  RootKind kind = RootKind::A;
  int parameter = 0;  // rank n of A(n), B(n), C(n); 2 for G2
  int cartan_dim = 0;
  int ambient_d = 0;  // dimension of the defining projective representation
  std::vector<RationalVec> simple_roots;
  RationalVec highest_weight;
  std::vector<RationalVec> constraints;

  int coords() const { return static_cast<int>(highest_weight.size()); }
  std::string name() const;
};

// A(n) for n >= 1, B(n) and C(n) for n >= 2, G2 (parameter ignored).
RootSystem root_system(RootKind kind, int parameter);
// Parses "A(2)", "B(3)", "C(4)", "G2".
RootSystem root_system(const std::string& name);

Rational apply(const RationalVec& f, const RationalVec& a);
double apply(const Vec& f, const Vec& a);
Vec to_double(const RationalVec& v);

// Point of the chamber where every simple root equals 1.
RationalVec barycenter(const RootSystem& rs);

// alpha(bar) / chi(bar) for each simple root alpha, in root order.
std::vector<Rational> ratio_bounds_per_root(const RootSystem& rs);
// The common value of ratio_bounds_per_root; throws if they disagree.
Rational ratio_bound(const RootSystem& rs);

// (chi + chi o iota) / 2, iota(a) = -reverse(a) in type A, identity otherwise.
RationalVec hilbert_functional(const RootSystem& rs);

std::string to_string(const Rational& q);
std::string to_string(const RationalVec& v);  // "(p/q;...)"

// min{(a1-a2)/a1, (a_{d-1}-a_d)/a1}
double V1(const Vec& a);
// min{a1-a2, a_{d-1}-a_d} / ((a1-a_d)/2)
double V2(const Vec& a);
// min over simple roots alpha(a)/phi(a).
double Vphi(const RootSystem& rs, const Vec& phi, const Vec& a);

// Chamber point with the given simple-root values (floating point).
class ChamberSampler {
 public:
  explicit ChamberSampler(const RootSystem& rs);
  Vec point(const Vec& root_values) const;
  // Dirichlet(1,...,1) root values.
  template <class Rng>
  Vec sample(Rng& rng) const;
  int roots() const { return static_cast<int>(solve_.cols()) - static_cast<int>(constraint_rows_); }

 private:
  Mat solve_;  // coords x coords inverse of [roots; constraints]
  std::size_t constraint_rows_ = 0;
};

struct ChamberMax {
  double value = 0.0;
  Vec argmax;
  std::size_t samples = 0;
};

using ChamberFunctional = std::function<double(const Vec&)>;

ChamberMax chamber_max_sample(const ChamberFunctional& f, const RootSystem& rs, std::size_t n, std::uint64_t seed);

// Angle between two ambient vectors.
double ray_angle(const Vec& a, const Vec& b);

// phi_i(x) = A.row(i) x + c(i), n+1 maps on R^n.
struct AffineFamily {
  Mat A;
  Vec c;
};

struct EqualizerReport {
  Vec equal_point;
  double equal_value = 0.0;
  double sampled_max = 0.0;
  Vec sampled_argmax;
  double gap = 0.0;  // equal_value - sampled_max
  std::vector<Vec> vertices;
};

class UnboundedRegion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

EqualizerReport simplex_equalizer_check(const AffineFamily& phi, std::size_t n, std::uint64_t seed);

// nullopt when the hypothesis a2 < 0 fails.
std::optional<bool> remark_a2_holds(const Vec& a);

struct RemarkA2Report {
  std::size_t sampled = 0;
  std::size_t checked = 0;  // points with a2 < 0
  std::size_t violations = 0;
};

RemarkA2Report remark_a2_check(std::size_t samples, int d, std::uint64_t seed);

template <class Rng>
Vec ChamberSampler::sample(Rng& rng) const {
  std::exponential_distribution<double> e(1.0);
  Vec r(roots());
  double s = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) s += (r(i) = e(rng));
  return point(r / s);
}

}  // namespace rigidity
