#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rigidity/config.hpp"
#include "rigidity/reps.hpp"

namespace rigidity {

inline constexpr int kSchemaVersion = 1;

struct Experiment {
  Representation geo;                 // Klein-model Schottky group
  std::optional<Representation> base;  // the PSL(2,R) group for psl2 geometry
  Representation lin;
};

Representation build_geometry(const GeometryConfig& g, std::optional<Representation>* base = nullptr);
Representation build_recipe(const Recipe& r, const Experiment& partial, int adjoint_sample_len);
Experiment build_experiment(const ExperimentConfig& c);

// Ledger keys, one per acceptance criterion.
std::string criterion_key(int id);

struct RunReport {
  nlohmann::json json;  // schema_version, config, stages, results, ledger, status, timings
  bool ok = false;      // no stage error and no failed ledger entry
  std::optional<PeriodSpectrum> base_spectrum;
  std::optional<PeriodSpectrum> lambda1_spectrum;
  std::optional<SampleSet> samples;
};

// Stages: build, enumerate, proximality, identities, spectra, entropy,
// samples, crossratio, rank, holder, cocycles, inequalities. A failing stage
// is recorded and every stage depending on it is skipped.
RunReport run(const ExperimentConfig& c);

// report.json plus spectrum and sample CSVs.
void write_outputs(const RunReport& r, const ExperimentConfig& c, const std::string& dir);

}  // namespace rigidity
