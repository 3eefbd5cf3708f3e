#include "peridyn/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "peridyn/errors.hpp"
#include "peridyn/parallel.hpp"
#include "peridyn/writers.hpp"

#ifndef PERIDYN_VERSION
#define PERIDYN_VERSION "0.0.0"
#endif

namespace peridyn {

namespace {

using json = nlohmann::ordered_json;

class PhaseTimer {
 public:
  explicit PhaseTimer(RunManifest& m) : manifest_(m) {}
  template <class F>
  auto time(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      RunManifest& m;
      std::string phase;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        m.timings.emplace_back(
            phase, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
    } record{manifest_, phase, t0};
    return f();
  }

 private:
  RunManifest& manifest_;
};

json report_json(const ConvergenceReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"N", l.n}, {"dx", l.dx}, {"l2_error", l.l2_error}, {"cg_iterations", l.iterations}});
  }
  return {{"levels", levels}, {"rates", r.rates}};
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string snapshot_name(std::size_t step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%06zu.vtk", step);
  return buf;
}

}  // namespace

std::string version_string() { return PERIDYN_VERSION; }

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["material"] = {{"E", c.youngs_modulus},
                   {"nu", c.poisson_ratio},
                   {"rho", c.density},
                   {"G0", c.energy_release_rate},
                   {"thickness", c.thickness}};
  json m;
  m["type"] = std::string(to_string(c.model));
  m["sigma_ratio"] = c.sigma_ratio ? json(*c.sigma_ratio) : json(nullptr);
  m["delta_ratio"] = c.delta_ratio ? json(*c.delta_ratio) : json(nullptr);
  m["chi2"] = c.chi2;
  m["correction"] = std::string(to_string(c.correction));
  m["micromodulus"] = std::string(to_string(c.micromodulus));
  m["critical_stretch"] = c.critical_stretch ? json(*c.critical_stretch) : json(nullptr);
  j["model"] = m;
  j["grid"] = {{"N", c.levels}};
  j["run"] = {{"dt", c.dt},
              {"steps", c.steps},
              {"tolerance", c.tolerance},
              {"max_iterations", c.max_iterations},
              {"snapshot_every", c.snapshot_every},
              {"impact_velocity", c.impact_velocity},
              {"damage_threshold", c.damage_threshold},
              {"angle_window", c.angle_window},
              {"output_dir", c.output_dir.string()}};
  return j.dump(2);
}

RunManifest run(const std::string& subcommand, const ScenarioConfig& input,
                const ProgressFn& progress) {
  ScenarioConfig config = input;
  config.scenario = subcommand;
  config.validate();
  configure_threads();

  RunManifest manifest;
  manifest.scenario = subcommand;
  manifest.version = version_string();
  manifest.config_json = config_to_json(config);
  PhaseTimer timer(manifest);
  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  json results;

  if (subcommand == "converge") {
    const auto report = timer.time("solve", [&] { return run_convergence_study(config, progress); });
    timer.time("write", [&] {
      write_convergence_csv(report, dir / "convergence.csv");
      return 0;
    });
    manifest.outputs.push_back(dir / "convergence.csv");
    results = report_json(report);
  } else if (subcommand == "crack-plate") {
    const auto res = timer.time("solve", [&] { return run_crack_plate(config, progress); });
    timer.time("write", [&] {
      write_convergence_csv(res.report, dir / "convergence.csv");
      write_profile_csv(res.profile, dir / "profile.csv");
      return 0;
    });
    manifest.outputs.push_back(dir / "convergence.csv");
    manifest.outputs.push_back(dir / "profile.csv");
    results = report_json(res.report);
    results["profile_max_deviation"] = res.profile_max_deviation;
    results["severed_bonds"] = res.severed_bonds;
  } else if (subcommand == "kalthoff") {
    SnapshotFn snap = [&](std::size_t step, const KalthoffSetup& setup, const DamageField& d) {
      const auto path = dir / snapshot_name(step);
      write_vtk_snapshot(setup.lattice, setup.state.displacement, d.phi, setup.state.velocity, path);
      manifest.outputs.push_back(path);
    };
    const auto res = timer.time("integrate", [&] { return run_kalthoff(config, snap, progress); });
    std::string history = "step,broken_bonds\n";
    for (std::size_t k = 0; k < res.break_history.size(); ++k) {
      history += std::to_string(k + 1) + "," + std::to_string(res.break_history[k]) + "\n";
    }
    write_text_file(dir / "break_history.csv", history);
    manifest.outputs.push_back(dir / "break_history.csv");
    results = {{"steps", res.steps},
               {"broken_bonds", res.broken_bonds},
               {"tip_angles_deg", {nan_safe(res.tip_angles[0]), nan_safe(res.tip_angles[1])}},
               {"mean_angle_deg", nan_safe(res.mean_angle)},
               {"stable_dt_estimate", res.stable_dt}};
  } else if (subcommand == "operator-check") {
    const auto moments = timer.time("moments", [] { return gaussian_moment_check(1.0, 1.0 / 8.0, 10.0); });
    const double sigma_ratio = config.sigma_ratio.value_or(1.0);
    const auto quad = timer.time("quadratic", [&] {
      return quadratic_consistency_check(config.youngs_modulus, config.levels.front(), sigma_ratio,
                                         config.chi2);
    });
    const auto energy = timer.time("energy", [&] {
      return energy_equivalence_check(config.youngs_modulus, 1e-3, 4.0, config.chi2);
    });
    const double energy_err = std::abs(energy.computed / energy.expected_continuum - 1.0);
    results = {{"moment_max_relative_residual", moments.max_relative_residual},
               {"quadratic_measured", quad.measured},
               {"quadratic_expected", quad.expected},
               {"quadratic_max_relative_error", quad.max_relative_error},
               {"quadratic_max_spurious", quad.max_spurious},
               {"energy_relative_error", energy_err}};
    manifest.passed = moments.max_relative_residual < 1e-6 && quad.max_relative_error < 0.02 &&
                      energy_err < 0.01;
    if (progress) {
      char line[200];
      std::snprintf(line, sizeof line,
                    "moment residual %.3e, quadratic error %.3e, energy error %.3e: %s",
                    moments.max_relative_residual, quad.max_relative_error, energy_err,
                    manifest.passed ? "ok" : "FAILED");
      progress(line);
    }
  } else {
    throw ConfigError("unknown subcommand '" + subcommand + "'");
  }

  manifest.results_json = results.dump(2);
  json m;
  m["scenario"] = manifest.scenario;
  m["version"] = manifest.version;
  m["config"] = json::parse(manifest.config_json);
  json timings = json::object();
  for (const auto& [phase, s] : manifest.timings) timings[phase] = s;
  m["timings_seconds"] = timings;
  json outs = json::array();
  for (const auto& p : manifest.outputs) outs.push_back(p.filename().string());
  m["outputs"] = outs;
  m["results"] = results;
  m["passed"] = manifest.passed;
  write_text_file(dir / "manifest.json", m.dump(2) + "\n");
  manifest.outputs.push_back(dir / "manifest.json");
  return manifest;
}

}  // namespace peridyn
