#include <cmath>
#include <cstdio>

#include "peridyn/errors.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

Vec3 manufactured_displacement(const Vec3& x) {
  const double xy = x.x * x.y;
  return {std::sin(xy), std::cos(xy), 0.0};
}

Vec3 manufactured_body_force(const Vec3& x, double E) {
  const double xy = x.x * x.y;
  const double s = std::sin(xy);
  const double c = std::cos(xy);
  const double u_xx = -x.y * x.y * s;
  const double u_yy = -x.x * x.x * s;
  const double u_xy = c - xy * s;
  const double v_xx = -x.y * x.y * c;
  const double v_yy = -x.x * x.x * c;
  const double v_xy = -s - xy * c;
  return {-(9.0 * E / 8.0 * u_xx + 3.0 * E / 4.0 * v_xy + 3.0 * E / 8.0 * u_yy),
          -(3.0 * E / 8.0 * v_xx + 3.0 * E / 4.0 * u_xy + 9.0 * E / 8.0 * v_yy), 0.0};
}

double l2_error(std::span<const Vec3> numeric, std::span<const Vec3> exact,
                const Lattice& lattice, const std::vector<bool>& mask) {
  if (numeric.size() != lattice.node_count() || exact.size() != lattice.node_count() ||
      mask.size() != lattice.node_count()) {
    throw ParameterError("fields are not aligned with the lattice");
  }
  double num = 0.0;
  double vol = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    if (!mask[i]) continue;
    const Vec3 d = numeric[i] - exact[i];
    num += dot(d, d) * lattice.volumes[i];
    vol += lattice.volumes[i];
  }
  if (vol == 0.0) throw ParameterError("l2_error over an empty node set");
  return std::sqrt(num / vol);
}

ConvergenceReport run_convergence_study(const ScenarioConfig& config, const ProgressFn& progress) {
  config.validate();
  if (config.model != ModelKind::gk_linear && config.model != ModelKind::classical_linear) {
    throw ConfigError("convergence study needs a linear model");
  }
  constexpr double kSide = 0.5;
  ConvergenceReport report;
  for (std::size_t n : config.levels) {
    const double dx = kSide / static_cast<double>(n);
    const ForceModel model = config.force_model(dx);
    const PaddedSquare square = padded_square({0.0, 0.0, 0.0}, kSide, n, model, config.thickness);
    const Lattice lattice = prepare_lattice(square.domain, model);
    const BondHealth health = initial_bond_health(lattice);
    const ForceAssembler assembler(lattice, model);

    const DirichletCollar collar =
        make_collar(lattice, square.collar_width, manufactured_displacement);
    std::vector<Vec3> body(lattice.node_count());
    std::vector<Vec3> exact(lattice.node_count());
    for (std::size_t i = 0; i < lattice.node_count(); ++i) {
      body[i] = manufactured_body_force(lattice.positions[i], config.youngs_modulus);
      exact[i] = manufactured_displacement(lattice.positions[i]);
    }
    const StaticSolution sol = solve_static_linear(assembler, health, collar, body,
                                                   config.tolerance, config.max_iterations);
    const auto mask = region_mask(lattice, square);
    const double err = l2_error(sol.displacement, exact, lattice, mask);
    report.add({n, dx, err, sol.report.iterations});
    if (progress) {
      char line[160];
      std::snprintf(line, sizeof line, "N=%zu dx=%.4e l2=%.4e cg_iterations=%zu residual=%.2e",
                    n, dx, err, sol.report.iterations, sol.report.residual);
      progress(line);
    }
  }
  return report;
}

}  // namespace peridyn
