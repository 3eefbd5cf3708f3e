#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "peridyn/errors.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

namespace {

// Angle in (-pi, pi].
double polar_angle(double y, double x) {
  const double t = std::atan2(y, x);
  return t == -std::numbers::pi ? std::numbers::pi : t;
}

}  // namespace

ElasticMaterial crack_plate_oracle_material() {
  constexpr double kBulk = 4e4;
  constexpr double kPoisson = 0.25;
  return ElasticMaterial(3.0 * kBulk * (1.0 - 2.0 * kPoisson), kPoisson, 1.0, 0.0, 1.0);
}

Vec3 crack_analytic_displacement(const Vec3& p, const ElasticMaterial& material,
                                 const CrackGeometry& crack) {
  const double x = p.x - crack.center.x;
  const double y = p.y - crack.center.y;
  const double a = crack.half_length;
  if (y == 0.0 && std::abs(x) <= a) {
    throw SingularPointError("analytic crack field evaluated on the crack");
  }
  const double r2 = x * x + y * y;
  const double theta = polar_angle(y, x);
  const double r_right = std::hypot(x - a, y);
  const double r_left = std::hypot(x + a, y);
  const double theta_mean = 0.5 * (polar_angle(y, x - a) + polar_angle(y, x + a));
  const double root = std::sqrt(r_right * r_left);

  const double nu = material.poisson_ratio();
  const double two_g = 2.0 * material.shear_modulus();
  const double tail = r2 / root * std::sin(theta);
  const double u = (1.0 - 2.0 * nu) * root * std::cos(theta_mean) -
                   tail * std::sin(theta - theta_mean);
  const double v = (2.0 - 2.0 * nu) * root * std::sin(theta_mean) -
                   tail * std::cos(theta - theta_mean);
  return {u / two_g, v / two_g, 0.0};
}

CrackPlateResult run_crack_plate(const ScenarioConfig& config, const ProgressFn& progress) {
  config.validate();
  if (config.model != ModelKind::gk_linear && config.model != ModelKind::classical_linear) {
    throw ConfigError("crack plate study needs a linear model");
  }
  constexpr double kSide = 2.0;
  const CrackGeometry crack{{1.0, 1.0, 0.0}, 0.5};
  const ElasticMaterial oracle = crack_plate_oracle_material();
  auto exact_at = [&](const Vec3& x) { return crack_analytic_displacement(x, oracle, crack); };

  CrackPlateResult result;
  for (std::size_t k = 0; k < config.levels.size(); ++k) {
    const std::size_t n = config.levels[k];
    if (n % 2 != 0) {
      throw ConfigError("crack plate needs an even node count so no node sits on the crack");
    }
    const double dx = kSide / static_cast<double>(n);
    const ForceModel model = config.force_model(dx);
    PaddedSquare square = padded_square({0.0, 0.0, 0.0}, kSide, n, model, config.thickness);
    square.domain.cracks.push_back({crack.center - Vec3{crack.half_length, 0.0, 0.0},
                                    crack.center + Vec3{crack.half_length, 0.0, 0.0}});
    const Lattice lattice = prepare_lattice(square.domain, model);
    const BondHealth health = initial_bond_health(lattice);
    result.severed_bonds.push_back(health.broken_count());
    const ForceAssembler assembler(lattice, model);

    const DirichletCollar collar = make_collar(lattice, square.collar_width, exact_at);
    std::vector<Vec3> exact(lattice.node_count());
    for (std::size_t i = 0; i < lattice.node_count(); ++i) exact[i] = exact_at(lattice.positions[i]);
    const StaticSolution sol = solve_static_linear(assembler, health, collar, {},
                                                   config.tolerance, config.max_iterations);
    const auto free_nodes = region_mask(lattice, square);
    const double err = l2_error(sol.displacement, exact, lattice, free_nodes);
    result.report.add({n, dx, err, sol.report.iterations});
    if (progress) {
      char line[160];
      std::snprintf(line, sizeof line, "N=%zu^2 dx=%.4e l2=%.4e cg_iterations=%zu severed=%zu",
                    n, dx, err, sol.report.iterations, health.broken_count());
      progress(line);
    }

    if (k + 1 == config.levels.size()) {
      const std::size_t row = square.pad + n / 2;  // first row above the crack line
      double scale = 0.0;
      for (std::size_t ix = square.pad; ix < square.pad + n; ++ix) {
        scale = std::max(scale, std::abs(exact[lattice.index(ix, row)].x));
      }
      result.profile.clear();
      result.profile_max_deviation = 0.0;
      for (std::size_t ix = square.pad; ix < square.pad + n; ++ix) {
        const std::size_t i = lattice.index(ix, row);
        const ProfilePoint pt{lattice.positions[i].x, sol.displacement[i].x / scale,
                              exact[i].x / scale};
        result.profile.push_back(pt);
        result.profile_max_deviation =
            std::max(result.profile_max_deviation, std::abs(pt.numeric - pt.exact));
      }
    }
  }
  return result;
}

}  // namespace peridyn
