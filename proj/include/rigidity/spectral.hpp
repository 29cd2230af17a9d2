#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rigidity/projective_matrix.hpp"

namespace rigidity {

inline constexpr double kProximalTol = 1e-8;

// Log-moduli of eigenvalues in descending order; sums to zero for |det| = 1.
class JordanVector {
 public:
  JordanVector() = default;
  explicit JordanVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double first() const { return values_.front(); }
  double last() const { return values_.back(); }

  // lambda(g^-1) = -reverse(lambda(g)).
  JordanVector opposite() const;

 private:
  std::vector<double> values_;
};

class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

JordanVector jordan_projection(const ProjectiveMatrix& m);

// log of the spectral radius.
double top_log_modulus(const Mat& m);

struct ProximalData {
  Vec attracting_line;     // unit, canonical sign
  Vec repelling_covector;  // unit, canonical sign; kernel is the repelling hyperplane
  double gap = 0.0;        // lambda_1 - lambda_2
  double top_eigenvalue = 0.0;
};

// nullopt when m is not proximal at the given gap tolerance.
std::optional<ProximalData> proximality_data(const ProjectiveMatrix& m, double tol = kProximalTol);

struct BenoistRate {
  double slope = 0.0;
  int iterations = 0;
  bool short_run = false;
};

// Slope of n -> log d_P(m^n v, m_+). Throws std::invalid_argument when v lies
// on the attracting line or in the repelling hyperplane, or m is not proximal.
BenoistRate benoist_rate(const ProjectiveMatrix& m, const Vec& v, int iterations);

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace rigidity
