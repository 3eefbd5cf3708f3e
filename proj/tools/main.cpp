#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <utility>

#include "peridyn/config.hpp"
#include "peridyn/errors.hpp"
#include "peridyn/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-kernel peridynamics driver"};
  app.set_version_flag("--version", peridyn::version_string());
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string levels;
  peridyn::ConfigOverrides ov;
  const std::pair<const char*, const char*> subcommands[] = {
      {"converge", "manufactured-solution convergence study"},
      {"crack-plate", "static plate with a center crack against the analytic field"},
      {"kalthoff", "dynamic edge-impact fracture of a double-notched plate"},
      {"operator-check", "moment, quadratic-consistency and energy checks"},
  };
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
    sub->add_option("--N", levels, "node count(s) per axis, comma separated");
    sub->add_option("--sigma-ratio", ov.sigma_ratio, "sigma / dx");
    sub->add_option("--delta-ratio", ov.delta_ratio, "delta / dx");
    sub->add_option("--chi2", ov.chi2, "chi-square truncation quantile");
    sub->add_option("--model", ov.model, "gk-nonlinear | gk-linear | classical-nonlinear | classical-linear");
    sub->add_option("--steps", ov.steps, "time steps");
    sub->add_option("--dt", ov.dt, "time step [s]");
    sub->add_option("--out", ov.output_dir, "output directory");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string scenario = app.get_subcommands().front()->get_name();
  try {
    peridyn::ScenarioConfig config = config_path.empty()
                                         ? peridyn::ScenarioConfig::defaults(scenario)
                                         : peridyn::parse_config_file(config_path, scenario);
    if (!levels.empty()) ov.levels = peridyn::parse_levels(levels);
    peridyn::apply_overrides(config, ov);
    const auto manifest = peridyn::run(scenario, config, [](std::string_view line) {
      std::cerr << line << '\n';
    });
    std::cout << manifest.results_json << '\n';
    std::cerr << "wrote " << manifest.outputs.size() << " file(s) to " << config.output_dir.string()
              << '\n';
    return manifest.passed ? 0 : 2;
  } catch (const peridyn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << scenario << " failed: " << e.what() << '\n';
    return 1;
  }
}
