#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peridyn/scenarios.hpp"

namespace peridyn {

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<std::vector<std::size_t>> levels;
  std::optional<double> sigma_ratio;
  std::optional<double> delta_ratio;
  std::optional<double> chi2;
  std::optional<std::string> model;
  std::optional<std::size_t> steps;
  std::optional<double> dt;
  std::optional<std::filesystem::path> output_dir;
};

/// Parses INI-style text with sections [material], [model], [grid], [run] on
/// top of ScenarioConfig::defaults(scenario). Keys:
///
///   [material] E nu rho G0 thickness
///   [model]    type sigma_ratio delta_ratio chi2 correction micromodulus critical_stretch
///   [grid]     N              (comma-separated node counts per axis)
///   [run]      dt steps tolerance max_iterations snapshot_every impact_velocity
///              damage_threshold angle_window output_dir
///
/// [model] type and [grid] N are required. Values are plain SI numbers; a unit
/// suffix ("200GPa") is rejected. Every offender is listed in one ConfigError.
ScenarioConfig parse_config_text(std::string_view text, const std::string& scenario);
ScenarioConfig parse_config_file(const std::filesystem::path& path, const std::string& scenario);

/// Applies overrides. Setting one of sigma_ratio / delta_ratio clears the other;
/// changing the model family without a matching ratio is left to validate().
void apply_overrides(ScenarioConfig& config, const ConfigOverrides& overrides);

/// "51,101,201" -> {51, 101, 201}. Throws ConfigError.
std::vector<std::size_t> parse_levels(std::string_view text);

}  // namespace peridyn
