#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rigidity {

inline constexpr int kCriteria = 10;

struct CriterionResult {
  int id = 0;
  std::string key;
  bool passed = false;
  std::string detail;
  nlohmann::json metrics;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::string config_dir;  // shipped configs, used by criterion 9
};

std::string criterion_title(int id);

// A criterion that throws is reported as failed with the message.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS C1.fuchsian_ladder  <detail>  (1.23 s)"
std::string format_line(const CriterionResult& r);

}  // namespace rigidity
