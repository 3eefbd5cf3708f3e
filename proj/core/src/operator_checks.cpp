#include <algorithm>
#include <cmath>

#include "peridyn/errors.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

MomentCheck gaussian_moment_check(double sigma, double dx, double radius) {
  if (!(sigma > 0.0) || !(dx > 0.0) || !(radius > 0.0)) {
    throw ParameterError("moment check needs positive sigma, spacing and radius");
  }
  const auto reach = static_cast<long>(std::floor(radius / dx));
  const double area = dx * dx;
  MomentCheck m;
  m.sigma = sigma;
  double m30 = 0.0, m21 = 0.0, m12 = 0.0, m03 = 0.0, m31 = 0.0, m13 = 0.0;
  for (long q = -reach; q <= reach; ++q) {
    for (long p = -reach; p <= reach; ++p) {
      const double x = static_cast<double>(p) * dx;
      const double y = static_cast<double>(q) * dx;
      const double r = std::hypot(x, y);
      if (r > radius) continue;
      const double w = gaussian_density(r, sigma, 2) * area;
      m.mass += w;
      m.m40 += w * x * x * x * x;
      m.m22 += w * x * x * y * y;
      m.m04 += w * y * y * y * y;
      m30 += w * x * x * x;
      m21 += w * x * x * y;
      m12 += w * x * y * y;
      m03 += w * y * y * y;
      m31 += w * x * x * x * y;
      m13 += w * x * y * y * y;
    }
  }
  const double s4 = sigma * sigma * sigma * sigma;
  // Third-order moments scale with sigma^3; normalize each by its own scale.
  const double s3 = sigma * sigma * sigma;
  m.max_odd = std::max({std::abs(m30) / s3, std::abs(m21) / s3, std::abs(m12) / s3,
                        std::abs(m03) / s3, std::abs(m31) / s4, std::abs(m13) / s4});
  m.max_relative_residual =
      std::max({std::abs(m.mass - 1.0), std::abs(m.m40 - 3.0 * s4) / (3.0 * s4),
                std::abs(m.m22 - s4) / s4, std::abs(m.m04 - 3.0 * s4) / (3.0 * s4), m.max_odd});
  return m;
}

QuadraticCheck quadratic_consistency_check(double youngs_modulus, std::size_t n,
                                           double sigma_ratio, double chi2) {
  constexpr double kSide = 0.5;
  DomainSpec domain;
  domain.upper = {kSide, kSide, 0.0};
  domain.nx = domain.ny = n;
  const double dx = kSide / static_cast<double>(n);
  const ElasticMaterial mat = ElasticMaterial::bond_based(2, youngs_modulus, 8000.0, 0.0, 1.0);
  const ForceModel model =
      ForceModel::gaussian(mat, GaussianInfluence::make(mat, sigma_ratio * dx, 2, chi2), true);
  const Lattice lattice = prepare_lattice(domain, model);
  const BondHealth health(lattice.bond_count());
  const ForceAssembler assembler(lattice, model);
  const std::size_t center = lattice.index(n / 2, n / 2);
  const Vec3 origin = lattice.positions[center];

  std::vector<Vec3> u(lattice.node_count());
  std::vector<Vec3> out(lattice.node_count());
  auto apply = [&](auto field) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Vec3 d = lattice.positions[i] - origin;
      u[i] = field(d.x, d.y);
    }
    assembler.apply_linear(u, health, out);
    return out[center];
  };

  const double E = youngs_modulus;
  const Vec3 uxx = apply([](double x, double) { return Vec3{x * x, 0.0, 0.0}; });
  const Vec3 uyy = apply([](double, double y) { return Vec3{y * y, 0.0, 0.0}; });
  const Vec3 vxy = apply([](double x, double y) { return Vec3{0.0, x * y, 0.0}; });
  const Vec3 vxx = apply([](double x, double) { return Vec3{0.0, x * x, 0.0}; });
  const Vec3 vyy = apply([](double, double y) { return Vec3{0.0, y * y, 0.0}; });
  const Vec3 uxy = apply([](double x, double y) { return Vec3{x * y, 0.0, 0.0}; });

  QuadraticCheck q;
  q.measured = {uxx.x / 2.0, uyy.x / 2.0, vxy.x, vxx.y / 2.0, vyy.y / 2.0, uxy.y};
  q.expected = {9.0 * E / 8.0, 3.0 * E / 8.0, 3.0 * E / 4.0,
                3.0 * E / 8.0, 9.0 * E / 8.0, 3.0 * E / 4.0};
  for (std::size_t k = 0; k < 6; ++k) {
    q.max_relative_error =
        std::max(q.max_relative_error, std::abs(q.measured[k] - q.expected[k]) / q.expected[k]);
  }
  q.max_spurious = std::max({std::abs(uxx.y), std::abs(uyy.y), std::abs(vxy.y), std::abs(vxx.x),
                             std::abs(vyy.x), std::abs(uxy.x)}) /
                   E;
  return q;
}

EnergyCheck energy_equivalence_check(double youngs_modulus, double stretch, double sigma_ratio,
                                     double chi2) {
  constexpr double kSpacing = 1e-3;
  const double sigma = sigma_ratio * kSpacing;
  const double radius = truncation_radius(sigma, chi2);
  const auto half = static_cast<std::size_t>(std::ceil(radius / kSpacing)) + 1;
  const std::size_t n = 2 * half + 1;
  DomainSpec domain;
  domain.upper = {static_cast<double>(n) * kSpacing, static_cast<double>(n) * kSpacing, 0.0};
  domain.nx = domain.ny = n;
  const ElasticMaterial mat = ElasticMaterial::bond_based(2, youngs_modulus, 8000.0, 0.0, 1.0);
  const ForceModel model =
      ForceModel::gaussian(mat, GaussianInfluence::make(mat, sigma, 2, chi2), false);
  const Lattice lattice = prepare_lattice(domain, model);
  const std::size_t center = lattice.index(half, half);
  const Vec3 origin = lattice.positions[center];
  std::vector<Vec3> u(lattice.node_count());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (lattice.positions[i] - origin) * stretch;

  EnergyCheck e;
  e.computed = strain_energy_density(center, u, lattice, model);
  const double beta = model.gk.spring_constant;
  e.expected_kernel = 2.0 * beta * stretch * stretch * std::pow(sigma, 4);
  e.expected_continuum = 1.5 * youngs_modulus * stretch * stretch;
  return e;
}

}  // namespace peridyn
