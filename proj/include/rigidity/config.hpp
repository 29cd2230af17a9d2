#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rigidity/crossratio.hpp"
#include "rigidity/entropy.hpp"

namespace rigidity {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Representation recipe tree:
//   klein | sym_power(d) | exterior(n, R) | adjoint(R) | perturb(eps, seed, R)
struct Recipe {
  enum class Kind { Klein, SymPower, Exterior, Adjoint, Perturb };
  Kind kind = Kind::Klein;
  int n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::shared_ptr<const Recipe> child;

  std::string str() const;
};

Recipe parse_recipe(std::string_view text);

struct GeometryConfig {
  std::string kind = "psl2";  // psl2 | klein
  // psl2: one generator per (angle, length).
  std::vector<double> angles;
  std::vector<double> lengths;
  // klein: explicit axes (with lengths, optional twists) or random axes.
  int k = 2;
  std::vector<std::vector<double>> axes;
  std::vector<double> twists;
  int rank = 2;
  double length = 2.5;
  std::uint64_t seed = 7;
};

struct ChecksConfig {
  std::size_t tuples = 1000;
  bool adjoint = false;
  bool nonnegative = false;
  std::optional<int> expected_rank;
  int rank_p_max = 0;  // 0: dimension + 2
  int rank_trials = 20;
  std::size_t holder_pairs = 20000;
  std::size_t cocycle_cases = 200;
};

struct Tolerances {
  double ladder = 1e-9;
  double klein = 1e-8;
  double axioms = 1e-8;
  double gromov = 1e-9;
  double adjoint = 1e-8;
  double cocycle = 1e-8;
  double rank = kRankTol;
  double min_pairing = kMinPairing;
  double rank_min_pairing = kRankMinPairing;
  double inequality_slack = 0.1;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  int max_len = 8;
  int sample_len = 6;
  std::string output_dir;
  GeometryConfig geometry;
  Recipe recipe;
  ChecksConfig checks;
  Tolerances tol;
  WindowPolicy window;
  nlohmann::json echo;  // parsed key/value tree, as read
};

// Strict key = value format with [section] headers and # comments. Values
// use JSON syntax (numbers, "strings", true/false, [arrays]). Unknown or
// repeated keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

}  // namespace rigidity
