#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "peridyn/errors.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

KalthoffSetup setup_kalthoff(const ScenarioConfig& config, const KalthoffGeometry& geometry) {
  config.validate();
  const std::size_t nx = config.levels.front();
  const std::size_t ny = (nx + 1) / 2;

  DomainSpec domain;
  domain.lower = {0.0, 0.0, 0.0};
  domain.upper = {geometry.length, geometry.width, 0.0};
  domain.nx = nx;
  domain.ny = ny;
  domain.thickness = geometry.thickness;
  const double dx = geometry.length / static_cast<double>(nx);
  const double dy = geometry.width / static_cast<double>(ny);
  const double mid = 0.5 * geometry.length;
  const std::array<double, 2> notch_x{mid - 0.5 * geometry.notch_separation,
                                      mid + 0.5 * geometry.notch_separation};

  for (double x : notch_x) {
    // A notch running through a column of node centers leaves the cut ambiguous.
    const double column = x / dx - 0.5;
    if (std::abs(column - std::round(column)) < 1e-6) {
      throw ParameterError("notch line coincides with a node column at this resolution");
    }
    domain.cracks.push_back({{x, 0.0, 0.0}, {x, geometry.notch_length, 0.0}});
  }
  if (geometry.notch_separation < 2.0 * dx) {
    throw ParameterError("notch separation is below two grid spacings");
  }

  ScenarioConfig cfg = config;
  cfg.thickness = geometry.thickness;
  ForceModel model = cfg.force_model(dx);

  KalthoffSetup setup{geometry,
                      prepare_lattice(domain, model),
                      BondHealth{},
                      KinematicState{},
                      {},
                      model,
                      {Vec3{notch_x[0], geometry.notch_length, 0.0},
                       Vec3{notch_x[1], geometry.notch_length, 0.0}},
                      Vec3{0.0, 1.0, 0.0}};
  setup.health = initial_bond_health(setup.lattice);
  setup.state = KinematicState(setup.lattice.node_count());

  const double half_strip =
      0.5 * std::min(geometry.notch_separation, geometry.impactor_diameter);
  VelocityConstraint impact;
  impact.velocity = {0.0, config.impact_velocity, 0.0};
  for (std::size_t i = 0; i < setup.lattice.node_count(); ++i) {
    const Vec3& p = setup.lattice.positions[i];
    if (std::abs(p.x - mid) < half_strip && p.y < 3.0 * dy) impact.nodes.push_back(i);
  }
  if (impact.nodes.empty()) throw ParameterError("impact strip contains no nodes");
  for (std::size_t k : impact.nodes) setup.state.velocity[k] = impact.velocity;
  setup.constraints.push_back(std::move(impact));
  return setup;
}

double measure_crack_angle(const DamageField& damage, const Lattice& lattice, const Vec3& tip,
                           const Vec3& notch_direction, double threshold, double window) {
  const Vec3 dir = notch_direction * (1.0 / norm(notch_direction));
  double mxx = 0.0;
  double mxy = 0.0;
  double myy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < lattice.node_count(); ++i) {
    if (!(damage.phi[i] > threshold)) continue;
    const Vec3 d = lattice.positions[i] - tip;
    if (dot(d, dir) <= 0.0 || norm(d) > window) continue;
    mxx += d.x * d.x;
    mxy += d.x * d.y;
    myy += d.y * d.y;
    ++count;
  }
  if (count < 10) {
    throw EvaluationError("insufficient damage near the notch tip (" + std::to_string(count) +
                          " nodes)");
  }
  // Principal axis of the second-moment tensor about the tip.
  const double phi = 0.5 * std::atan2(2.0 * mxy, mxx - myy);
  const Vec3 axis{std::cos(phi), std::sin(phi), 0.0};
  const double c = std::clamp(std::abs(dot(axis, dir)), 0.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

KalthoffResult run_kalthoff(const ScenarioConfig& config, const SnapshotFn& snapshot,
                            const ProgressFn& progress) {
  KalthoffSetup setup = setup_kalthoff(config);
  const ForceAssembler assembler(setup.lattice, setup.model);
  VerletIntegrator integrator(assembler, config.dt, setup.constraints);
  integrator.initialize(setup.state, setup.health);

  KalthoffResult result;
  result.stable_dt = stable_dt_estimate(assembler, setup.model.material);
  if (progress) {
    char line[160];
    std::snprintf(line, sizeof line, "nodes=%zu bonds=%zu dt=%.3e stable_dt_estimate=%.3e%s",
                  setup.lattice.node_count(), setup.lattice.bond_count(), config.dt,
                  result.stable_dt, config.dt > result.stable_dt ? " (dt exceeds estimate)" : "");
    progress(line);
  }

  const std::size_t every = config.snapshot_every;
  for (std::size_t step = 1; step <= config.steps; ++step) {
    integrator.step(setup.state, setup.health);
    result.break_history.push_back(setup.health.broken_count());
    if (progress && step % 50 == 0) {
      char line[128];
      std::snprintf(line, sizeof line, "step %zu t=%.4e broken=%zu", step, setup.state.time,
                    result.break_history.back());
      progress(line);
    }
    if (snapshot && every > 0 && step % every == 0 && step != config.steps) {
      snapshot(step, setup, damage_field(setup.lattice, setup.health));
    }
  }

  result.steps = config.steps;
  result.broken_bonds = setup.health.broken_count();
  result.damage = damage_field(setup.lattice, setup.health);
  if (snapshot) snapshot(config.steps, setup, result.damage);

  const double window = config.angle_window * setup.geometry.notch_length;
  double sum = 0.0;
  int measured = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    try {
      result.tip_angles[k] =
          measure_crack_angle(result.damage, setup.lattice, setup.notch_tips[k],
                              setup.notch_direction, config.damage_threshold, window);
      sum += result.tip_angles[k];
      ++measured;
    } catch (const EvaluationError&) {
      result.tip_angles[k] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  result.mean_angle = measured ? sum / measured : std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace peridyn
