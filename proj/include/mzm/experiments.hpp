#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mzm {

struct ExperimentConfig {
  std::string experiment = "braid";
  double t = 5.0;
  std::optional<long> shots;  // nullopt = exact mode
  std::uint64_t seed = 12345;
  double leakage = 0.0;
  std::string kind = "flip";  // noise experiment: flip | phase
  int trials = 100;           // lower experiment: verification trials
  bool trace = false;
};

const std::vector<std::string>& experiment_names();

// Throws ConfigError naming the offending field path.
ExperimentConfig config_from_json(const nlohmann::json& j);
void validate_config(const ExperimentConfig& c);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct ExperimentRecord {
  // {"schema": "mzmsim.record.v1", "config": ..., "payload": ..., "wall_ms": ...}
  nlohmann::json record;
  // Plot-data artifacts keyed by file name (bloch.csv, chi.csv, trace.txt).
  std::map<std::string, std::string> artifacts;
};

ExperimentRecord run_experiment(const ExperimentConfig& c);

}  // namespace mzm
