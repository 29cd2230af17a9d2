#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rigidity/crossratio.hpp"
#include "rigidity/entropy.hpp"

namespace rigidity {

// lambda_1(tau_d g) = (d-1)/2 |g| on every class, and the entropy ratios of
// the spectral and Hilbert spectra of tau_d against the base lengths.
struct LadderCheck {
  int d = 0;
  std::size_t classes = 0;
  double worst_relative = 0.0;
  double expected_ratio = 0.0;
  double ratio_spectral = 0.0;
  double ratio_hilbert = 0.0;
  bool passed = false;
};

LadderCheck fuchsian_ladder_check(const Representation& rep2, int d, int max_len, double tol);

// lambda_1(rho g) = |g| and lambda_1(A_rho g) = 2|g| for a Klein-model group,
// with |g| measured as the displacement of a point on the axis.
struct KleinIdentityCheck {
  std::size_t classes = 0;
  int adjoint_span = 0;
  double worst_lambda1 = 0.0;
  double worst_adjoint = 0.0;
  bool passed = false;
};

// Displacement d(p, g p) for p on the axis of g.
double axis_displacement(const ProjectiveMatrix& g);

KleinIdentityCheck klein_identity_check(const Representation& klein, int max_len, int adjoint_sample_len, double tol);

struct SuiteOptions {
  std::size_t tuples = 1000;
  std::uint64_t seed = 1;
  double axiom_tol = 1e-8;
  double gromov_tol = 1e-9;
  double adjoint_tol = 1e-8;
  double min_pairing = kMinPairing;
  bool adjoint = false;
  int adjoint_sample_len = 5;
  bool nonnegative = false;
};

struct CrossRatioSuite {
  std::size_t samples = 0;
  AxiomReport axioms;
  double gromov_worst = 0.0;
  std::optional<double> adjoint_worst;
  std::optional<double> min_value;
  bool passed = false;
};

CrossRatioSuite cross_ratio_suite(const Representation& geo, const Representation& lin, const SampleSet& samples,
                                  const SuiteOptions& opts);

// beta(g0 g1, x) = beta(g0, g1 x) + beta(g1, x) and
// [gx, gy] - [x, y] = -(beta-bar(g, x) + beta(g, y)).
struct CocycleCheck {
  std::size_t cocycle_cases = 0;
  std::size_t equivariance_cases = 0;
  double cocycle_worst = 0.0;
  double equivariance_worst = 0.0;
  bool passed = false;
};

CocycleCheck cocycle_check(const Representation& geo, const Representation& lin, const SampleSet& samples,
                           std::size_t cases, std::uint64_t seed, double tol, double min_pairing = 1e-6);

// alpha_ub h_rho <= h_Gamma (1 + slack), alpha_ub H_rho <= h_Gamma (1 + slack)
// and, for type A targets, alpha_flag h_chi <= 2/(d-1) h_Gamma (1 + slack).
struct DeskInequalities {
  double alpha_ub = 0.0;
  double alpha_ub_flag = 0.0;
  double h_rho = 0.0;
  double hilbert = 0.0;
  double h_gamma = 0.0;
  double ratio_bound = 0.0;
  double slack = 0.0;
  bool entropy_bound_spectral = false;
  bool entropy_bound_hilbert = false;
  bool flag_bound = false;
  bool passed = false;
};

DeskInequalities desk_inequalities(const Representation& geo, const Representation& lin,
                                   const std::vector<Word>& classes, double slack, const WindowPolicy& w = {});

nlohmann::json to_json(const LadderCheck& c);
nlohmann::json to_json(const KleinIdentityCheck& c);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const CrossRatioSuite& c);
nlohmann::json to_json(const CocycleCheck& c);
nlohmann::json to_json(const DeskInequalities& c);

}  // namespace rigidity
