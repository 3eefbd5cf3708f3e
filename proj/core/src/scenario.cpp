#include <cmath>
#include <string>

#include "peridyn/errors.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

ScenarioConfig ScenarioConfig::defaults(const std::string& scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  if (scenario == "converge" || scenario == "operator-check") {
    c.youngs_modulus = 1.92e11;
    c.density = 8000.0;
    c.thickness = 0.0025;
    c.model = ModelKind::gk_linear;
    c.sigma_ratio = 1.0;
    c.chi2 = 36.0;
    c.levels = scenario == "converge" ? std::vector<std::size_t>{51, 101, 201}
                                      : std::vector<std::size_t>{201};
  } else if (scenario == "crack-plate") {
    // Plane-stress constants matching the plane-strain oracle: shear modulus
    // G = 2.4e4 from bulk modulus 4e4 and Poisson 1/4, E = 8G/3 at nu = 1/3.
    const ElasticMaterial oracle = crack_plate_oracle_material();
    c.youngs_modulus = 8.0 * oracle.shear_modulus() / 3.0;
    c.density = 1.0;
    c.thickness = 1.0;
    c.model = ModelKind::gk_linear;
    c.sigma_ratio = 1.0;
    c.chi2 = 36.0;
    c.levels = {32, 64, 128};
  } else if (scenario == "kalthoff") {
    c.youngs_modulus = 191e9;
    c.density = 8000.0;
    c.thickness = 0.009;
    c.model = ModelKind::gk_nonlinear;
    c.sigma_ratio = 1.0;
    c.chi2 = 36.0;
    c.critical_stretch = 0.01;
    c.levels = {201};
    c.dt = 8.7e-8;
    c.steps = 1000;
    c.impact_velocity = 32.0;
  } else {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
  return c;
}

void ScenarioConfig::validate() const {
  const bool gk = model == ModelKind::gk_linear || model == ModelKind::gk_nonlinear;
  if (sigma_ratio && delta_ratio) {
    throw ConfigError("sigma_ratio and delta_ratio are mutually exclusive");
  }
  if (gk && !sigma_ratio) throw ConfigError("Gaussian model requires sigma_ratio");
  if (!gk && !delta_ratio) throw ConfigError("bounded-horizon model requires delta_ratio");
  if (levels.empty()) throw ConfigError("at least one grid level is required");
  for (auto n : levels) {
    if (n < 2) throw ConfigError("grid levels need at least two nodes per axis");
  }
  if ((sigma_ratio && !(*sigma_ratio > 0.0)) || (delta_ratio && !(*delta_ratio > 0.0))) {
    throw ConfigError("length ratios must be positive");
  }
  if (!(chi2 > 0.0)) throw ConfigError("chi2 must be positive");
}

ElasticMaterial ScenarioConfig::material() const {
  return ElasticMaterial(youngs_modulus, poisson_ratio, density, energy_release_rate,
                         thickness);
}

ForceModel ScenarioConfig::force_model(double dx) const {
  validate();
  const ElasticMaterial mat = material();
  const bool linear = model == ModelKind::gk_linear || model == ModelKind::classical_linear;
  if (sigma_ratio) {
    return ForceModel::gaussian(
        mat, GaussianInfluence::make(mat, *sigma_ratio * dx, 2, chi2, critical_stretch), linear);
  }
  return ForceModel::bounded(
      mat,
      ClassicalHorizon::make(mat, *delta_ratio * dx, micromodulus, correction, 2,
                             critical_stretch),
      linear);
}

void ConvergenceReport::add(const Level& level) {
  if (!levels.empty()) {
    const Level& prev = levels.back();
    rates.push_back(convergence_rate(prev.l2_error, level.l2_error, prev.dx, level.dx));
  }
  levels.push_back(level);
}

double convergence_rate(double e_coarse, double e_fine, double dx_coarse, double dx_fine) {
  return std::log(e_coarse / e_fine) / std::log(dx_coarse / dx_fine);
}

}  // namespace peridyn

namespace peridyn {

PaddedSquare padded_square(const Vec3& lower, double side, std::size_t n, const ForceModel& model,
                           double thickness) {
  if (n < 2) throw ParameterError("padded square needs at least two cells per axis");
  PaddedSquare sq;
  sq.dx = side / static_cast<double>(n);
  double reach = model.neighbor_radius();
  if (!model.is_gaussian() && model.correction() == CorrectionMethod::qwj) reach += 0.5 * sq.dx;
  sq.pad = static_cast<std::size_t>(std::ceil(reach / sq.dx * (1.0 - 1e-12)));
  sq.collar_width = static_cast<double>(sq.pad) * sq.dx;
  const Vec3 shift{sq.collar_width, sq.collar_width, 0.0};
  sq.domain.lower = lower - shift;
  sq.domain.upper = lower + Vec3{side, side, 0.0} + shift;
  sq.domain.nx = sq.domain.ny = n + 2 * sq.pad;
  sq.domain.thickness = thickness;
  return sq;
}

std::vector<bool> region_mask(const Lattice& lattice, const PaddedSquare& sq) {
  std::vector<bool> mask(lattice.node_count(), false);
  const std::size_t n = sq.domain.nx - 2 * sq.pad;
  for (std::size_t iy = sq.pad; iy < sq.pad + n; ++iy) {
    for (std::size_t ix = sq.pad; ix < sq.pad + n; ++ix) mask[lattice.index(ix, iy)] = true;
  }
  return mask;
}

}  // namespace peridyn
