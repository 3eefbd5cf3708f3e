#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "peridyn/integrators.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

struct RunManifest {
  std::string scenario;
  std::string version;
  /// Resolved configuration as JSON text.
  std::string config_json;
  std::vector<std::pair<std::string, double>> timings;  ///< phase -> seconds
  std::vector<std::filesystem::path> outputs;
  /// Scenario-specific results as JSON text (rates, angles, residuals, ...).
  std::string results_json;
  bool passed = true;
};

std::string version_string();

/// JSON echo of every resolved config field.
std::string config_to_json(const ScenarioConfig& config);

/// Runs one of converge | crack-plate | kalthoff | operator-check, writes its
/// outputs and manifest.json into config.output_dir, and returns the manifest.
/// `passed` is false when an operator-check threshold is missed.
RunManifest run(const std::string& subcommand, const ScenarioConfig& config,
                const ProgressFn& progress = {});

}  // namespace peridyn
