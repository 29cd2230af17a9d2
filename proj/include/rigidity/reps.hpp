#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidity/projective_matrix.hpp"
#include "rigidity/words.hpp"

namespace rigidity {

// Representation of a free group: one projective matrix per generator.
class Representation {
 public:
  Representation() = default;
  Representation(std::vector<ProjectiveMatrix> generators, std::string label);
  // Inverses supplied by the caller, e.g. exact ones from a functorial
  // construction; a numerical inverse of an ill-conditioned generator is not
  // accurate enough for long words.
  Representation(std::vector<ProjectiveMatrix> generators, std::vector<Mat> inverses, std::string label);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  const std::string& label() const { return label_; }
  const std::vector<ProjectiveMatrix>& generators() const { return generators_; }

  // Image of a single letter (generator or its inverse).
  const Mat& letter_image(Letter l) const;

 private:
  int dim_ = 0;
  std::vector<ProjectiveMatrix> generators_;
  std::vector<Mat> inverses_;
  std::string label_;
};

class NotProximalError : public std::runtime_error {
 public:
  NotProximalError(const std::string& what, Word word) : std::runtime_error(what), word_(std::move(word)) {}
  const Word& word() const { return word_; }

 private:
  Word word_;
};

ProjectiveMatrix evaluate(const Representation& rep, const Word& w);

// rep(w) v applied letter by letter, which keeps full relative accuracy when
// v is nearly contracted by rep(w). Returns the unit direction and adds
// log |rep(w) v| / |v| to *log_norm when given.
Vec apply_word(const Representation& rep, const Word& w, const Vec& v, double* log_norm = nullptr);
// Same for the action on covectors, theta -> rep(w)^{-T} theta.
Vec apply_word_dual(const Representation& rep, const Word& w, const Vec& theta, double* log_norm = nullptr);

// Induced action on degree d-1 binary forms, basis x^{d-1}, x^{d-2}y, ..., y^{d-1}.
Mat sym_power_matrix(const Mat& g, int d);
Representation sym_power_rep(const Representation& rep2, int d);

// Induced action on Lambda^n, wedge basis in lexicographic order.
Mat exterior_power_matrix(const Mat& g, int n);
Representation exterior_power_rep(const Representation& rep, int n);

// ---------------------------------------------------------------------------
// Klein model of H^k: SO(1,k) acting on R^{1,k}, form x0^2 - x1^2 - ... - xk^2.

Mat lorentz_form(int k);

struct SchottkyGenerator {
  Vec axis;            // unit vector in R^k; the translation axis passes through o
  double length = 1.0;  // translation length
  double twist = 0.0;   // rotation angle about the axis (k >= 3)
};

struct PingPongCertificate {
  bool ok = false;
  double margin = 0.0;  // min angular gap between the 2r boundary caps
  std::vector<double> cap_radii;
};

class PingPongError : public std::domain_error {
 public:
  PingPongError(const std::string& what, PingPongCertificate cert)
      : std::domain_error(what), cert_(std::move(cert)) {}
  const PingPongCertificate& certificate() const { return cert_; }

 private:
  PingPongCertificate cert_;
};

inline constexpr double kPingPongMargin = 1e-6;

// Hyperbolic translation of the given length along the axis through o,
// composed with a rotation of angle `twist` about that axis.
Mat klein_translation(int k, const SchottkyGenerator& g);

PingPongCertificate ping_pong_certificate(int k, const std::vector<SchottkyGenerator>& gens);

struct KleinSchottky {
  Representation rep;
  PingPongCertificate certificate;
};

// Throws PingPongError when the attracting/repelling half-spaces overlap.
KleinSchottky klein_schottky(int k, const std::vector<SchottkyGenerator>& gens, std::string label = "klein");

// Random axes (and twists when k >= 3) with the given translation length,
// redrawn until ping-pong holds.
KleinSchottky random_klein_schottky(int k, int rank, double length, std::uint64_t seed);

// PSL(2,R) Schottky group: generator i translates by lengths[i] along the
// geodesic through i whose Klein-model axis is (cos angles[i], sin angles[i]).
Representation psl2_schottky(const std::vector<double>& angles, const std::vector<double>& lengths,
                             std::string label = "psl2");

// SO(1,2) image of an SL(2,R) matrix via its adjoint action on sl(2,R).
Mat psl2_to_so12(const Mat& a);
Representation klein_from_psl2(const Representation& rep2);

// ---------------------------------------------------------------------------

struct AdjointResult {
  Representation rep;
  int span_dim = 0;
  Mat basis;  // d^2 x span_dim, orthonormal columns (column-major vec of matrices)
  std::vector<double> singular_values;
};

class InsufficientSampling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative singular-value cutoff deciding the span dimension.
inline constexpr double kSpanTol = 1e-8;

// Span dimension of the rank-one attractors M(xi(g+), xi*(g+)) over the words.
int adjoint_span_dimension(const Representation& rep, const std::vector<Word>& sample_words);

// Restriction of Ad(rep) to V = span of the rank-one attractors. Throws
// InsufficientSampling when the span dimension computed from the first half
// of the words differs from the full set.
AdjointResult adjoint_irreducible(const Representation& rep, const std::vector<Word>& sample_words);

// Rank-one matrix v theta^T as a vector of length d^2 (column-major).
Vec rank_one_vec(const Vec& v, const Vec& theta);

// Additive perturbation of operator norm eps per generator, deterministic in seed.
Representation perturb(const Representation& rep, double eps, std::uint64_t seed);

// Conjugate every generator by c.
Representation conjugate(const Representation& rep, const Mat& c);

// ---------------------------------------------------------------------------
// Accurate Jordan data along words, from products of well-conditioned
// factors rather than from the eigenvalues of one ill-conditioned product.

class ExteriorTower {
 public:
  explicit ExteriorTower(const Representation& rep);
  const Representation& base() const { return powers_.front(); }
  int dim() const { return base().dim(); }
  // Lambda^n rep, n in 1..d-1.
  const Representation& power(int n) const { return powers_.at(n - 1); }

 private:
  std::vector<Representation> powers_;
};

double word_lambda1(const Representation& rep, const Word& w);
// lambda_d of rep(w), via -lambda_1(rep(w^-1)).
double word_lambda_last(const Representation& rep, const Word& w);
// lambda_1 - lambda_2 of rep(w) via Lambda^2.
double word_first_gap(const Representation& rep, const Representation& wedge2, const Word& w);
// Full Jordan vector of rep(w) from partial sums lambda_1 + ... + lambda_n.
std::vector<double> word_jordan_projection(const ExteriorTower& tower, const Word& w);

// JSON document {dim, generators: [[row-major]], label}.
nlohmann::json to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j);

}  // namespace rigidity
