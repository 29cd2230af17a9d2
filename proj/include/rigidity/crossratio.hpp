#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/hypgeom.hpp"
#include "rigidity/reps.hpp"

namespace rigidity {

// Boundary point together with xi(base) and xi*(base).
struct LimitSample {
  BoundaryPoint base;
  Vec line;      // unit, canonical sign
  Vec covector;  // unit, canonical sign
  Word word;
};

using SampleSet = std::vector<LimitSample>;

inline constexpr double kBaseDedupTol = 1e-10;

bool same_base(const LimitSample& a, const LimitSample& b);

// Sample of (xi, xi*) at the attracting fixed point of every word. The
// geometric representation must be a Klein-model Schottky group. Throws
// NotProximalError on the first word whose image is not biproximal.
SampleSet limit_samples(const Representation& geo_rep, const Representation& lin_rep, const std::vector<Word>& words);

// Single sample at the attracting fixed point of an arbitrary group element.
LimitSample limit_sample(const Representation& geo_rep, const Representation& lin_rep, const Word& w);

// beta(g, x) = log |rho(g) v| / |v|, v in xi(x).
double cocycle_beta(const Representation& lin_rep, const Word& g, const LimitSample& s);
// beta-bar(g, x) = log |theta o rho(g^-1)| / |theta|, theta in xi*(x).
double cocycle_beta_bar(const Representation& lin_rep, const Word& g, const LimitSample& s);

// G(theta, v) = log |theta(v)| / (|theta| |v|); -inf when theta(v) = 0.
double gromov_G(const Vec& theta, const Vec& v);

// [x,y] = G(xi*(x), xi(y)).
inline double gromov_bracket(const LimitSample& x, const LimitSample& y) { return gromov_G(x.covector, y.line); }

class DegenerateTuple : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using CrossRatioFn =
    std::function<double(const LimitSample&, const LimitSample&, const LimitSample&, const LimitSample&)>;

// b(x,y,z,t) = phi(u)/psi(u) * psi(v)/phi(v), phi = xi*(x), psi = xi*(z), u = xi(y), v = xi(t).
double cross_ratio(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t);

// exp([x,y] - [z,y] + [z,t] - [x,t]).
double cross_ratio_from_gromov(const LimitSample& x, const LimitSample& y, const LimitSample& z, const LimitSample& t);

// Classical cross ratio on the projective line, ((y-x)(t-z)) / ((y-z)(t-x)).
double classical_cross_ratio(double x, double y, double z, double t);

struct AxiomReport {
  // Max relative violation per axiom.
  double symmetry = 0.0;       // b(x,y,z,t) = b(z,t,x,y)
  double normalization = 0.0;  // b(x,y,x,t) = 1 = b(x,y,z,y)
  double vanishing = 0.0;      // b = 0 iff x = y or z = t
  double cocycle_first = 0.0;  // b(x,y,z,t) = b(x,y,z,w) b(x,w,z,t)
  double cocycle_second = 0.0; // b(x,y,z,t) = b(x,y,w,t) b(w,y,z,t)
  std::size_t tuples = 0;
  double tol = 0.0;

  bool passed() const;
  double worst() const;
};

// min(|xi*(a)(xi(b))|, |xi*(b)(xi(a))|) for unit line and covector. Cross
// ratios of samples whose pairings are near eps lose all relative accuracy.
double pairing_separation(const LimitSample& a, const LimitSample& b);

inline constexpr double kMinPairing = 1e-4;

// True when every pair among the indexed samples has pairing_separation >= min_pairing.
bool well_separated(const SampleSet& samples, const std::vector<std::size_t>& idx, double min_pairing);

// Index 5-tuples (x,y,z,t,w) of pairwise well-separated samples. Throws when
// too few candidates pass.
std::vector<std::array<std::size_t, 5>> random_five_tuples(const SampleSet& samples, std::size_t count,
                                                            std::uint64_t seed, double min_pairing = kMinPairing);

AxiomReport axiom_check(const CrossRatioFn& b, const SampleSet& samples,
                        const std::vector<std::array<std::size_t, 5>>& tuples, double tol);

struct ChiResult {
  double det = 0.0;
  double row_norm_product = 0.0;  // product of row sup-norms of the p x p matrix
  double scaled() const { return row_norm_product > 0 ? std::abs(det) / row_norm_product : 0.0; }
};

// det_{i,j>0} b(e_i, u_j, e_0, u_0). e and u hold p+1 sample indices.
ChiResult chi_p_det(const CrossRatioFn& b, const SampleSet& samples, const std::vector<std::size_t>& e,
                    const std::vector<std::size_t>& u);

inline constexpr double kRankTol = 1e-8;
// The collapse test tolerates closer points than the axiom checks: a
// collapsed determinant sits near 1e-16 and a full-rank one above 1e-4.
inline constexpr double kRankMinPairing = 1e-6;

struct RankResult {
  std::optional<int> rank;            // nullopt: no collapse up to p_max ("> p_max")
  std::vector<double> max_scaled_chi;  // index p-1
};

// Each trial draws 2(p+1) well-separated samples.
RankResult rank_estimate(const CrossRatioFn& b, const SampleSet& samples, int p_max, int trials, double tol,
                         std::uint64_t seed, double min_pairing = kRankMinPairing);

// Dimension of the span of the sampled lines (singular values above 1e-8 relative).
int line_span_dimension(const SampleSet& samples);

// min over words of min{lambda1 - lambda2, lambda_{d-1} - lambda_d}(rho g) / |g|.
double holder_upper_bound(const Representation& geo_rep, const Representation& lin_rep, const std::vector<Word>& words);

// Flag-map version: min over all consecutive gaps lambda_i - lambda_{i+1}.
double holder_upper_bound_flag(const Representation& geo_rep, const Representation& lin_rep,
                               const std::vector<Word>& words);

struct HolderPair {
  double visual = 0.0;      // delta_o(x, y)
  double projective = 0.0;  // d_P(xi x, xi y)
};

std::vector<HolderPair> holder_pairs(const SampleSet& samples, const HypPoint& o, std::size_t max_pairs,
                                     std::uint64_t seed);

struct HolderBin {
  double x = 0.0;         // bin center in -log delta
  double envelope = 0.0;  // min of -log d_P in the bin
  std::size_t count = 0;
};

struct HolderFit {
  double alpha = 0.0;
  std::vector<HolderBin> bins;
  bool insufficient_spread = false;
};

// Lower-envelope slope of (-log delta, -log d_P) over dyadic bins of delta.
HolderFit holder_exponent_fit(const std::vector<HolderPair>& pairs);

// CSV: word, base coords, line coords, covector coords.
void write_samples_csv(std::ostream& os, const SampleSet& samples);

// Question-style experiment: exp{l(g^n h^n) - l(g^n) - l(h^n)} for l = lambda_1,
// compared with b(g-, h+, h-, g+). No claim is attached to the outcome.
struct BenoistLimitExperiment {
  std::vector<double> values;  // n = 1..N
  double cross_ratio_value = 0.0;
};
BenoistLimitExperiment benoist_limit_experiment(const Representation& geo_rep, const Representation& lin_rep,
                                                const Word& g, const Word& h, int n_max);

}  // namespace rigidity
