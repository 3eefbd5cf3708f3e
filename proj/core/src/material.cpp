#include "peridyn/material.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

void require_dimension(int dimension) {
  if (dimension != 2 && dimension != 3) {
    throw ParameterError("unsupported dimension " + std::to_string(dimension) +
                         " (expected 2 or 3)");
  }
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(name) + " must be positive and finite, got " +
                         std::to_string(value));
  }
}

}  // namespace

ElasticMaterial::ElasticMaterial(double youngs_modulus, double poisson_ratio, double density,
                                 double energy_release_rate, double thickness)
    : E_(youngs_modulus),
      nu_(poisson_ratio),
      rho_(density),
      G0_(energy_release_rate),
      h_(thickness) {
  require_positive(E_, "Young's modulus");
  require_positive(rho_, "density");
  require_positive(h_, "thickness");
  if (!(G0_ >= 0.0) || !std::isfinite(G0_)) {
    throw ParameterError("energy release rate must be non-negative");
  }
  if (!(nu_ > -1.0 && nu_ < 0.5)) {
    throw ParameterError("Poisson ratio must lie in (-1, 0.5)");
  }
}

ElasticMaterial ElasticMaterial::bond_based(int dimension, double youngs_modulus,
                                            double density, double energy_release_rate,
                                            double thickness) {
  require_dimension(dimension);
  const double nu = dimension == 2 ? 1.0 / 3.0 : 0.25;
  return ElasticMaterial(youngs_modulus, nu, density, energy_release_rate, thickness);
}

void ElasticMaterial::check_bond_based(int dimension) const {
  require_dimension(dimension);
  const double expected = dimension == 2 ? 1.0 / 3.0 : 0.25;
  if (std::abs(nu_ - expected) > 1e-12) {
    throw ParameterError("bond-based model in " + std::to_string(dimension) +
                         "D requires Poisson ratio " + std::to_string(expected) + ", got " +
                         std::to_string(nu_));
  }
}

std::string_view to_string(CorrectionMethod m) {
  switch (m) {
    case CorrectionMethod::none: return "none";
    case CorrectionMethod::fa: return "FA";
    case CorrectionMethod::lammps: return "LAMMPS";
    case CorrectionMethod::qwj: return "QWJ";
  }
  return "?";
}

std::string_view to_string(MicromodulusKind k) {
  return k == MicromodulusKind::constant ? "constant" : "conical";
}

std::optional<CorrectionMethod> parse_correction_method(std::string_view s) {
  if (s == "none") return CorrectionMethod::none;
  if (s == "FA" || s == "fa") return CorrectionMethod::fa;
  if (s == "LAMMPS" || s == "lammps") return CorrectionMethod::lammps;
  if (s == "QWJ" || s == "qwj") return CorrectionMethod::qwj;
  return std::nullopt;
}

std::optional<MicromodulusKind> parse_micromodulus_kind(std::string_view s) {
  if (s == "constant") return MicromodulusKind::constant;
  if (s == "conical") return MicromodulusKind::conical;
  return std::nullopt;
}

double gaussian_density(double xi_norm, double sigma, int dimension) {
  require_dimension(dimension);
  require_positive(sigma, "sigma");
  if (!(xi_norm >= 0.0)) throw ParameterError("bond length must be non-negative");
  const double var = sigma * sigma;
  const double norm = dimension == 2 ? 1.0 / (2.0 * std::numbers::pi * var)
                                     : std::pow(2.0 * std::numbers::pi * var, -1.5);
  return norm * std::exp(-xi_norm * xi_norm / (2.0 * var));
}

double spring_constant(const ElasticMaterial& material, double sigma, int dimension) {
  require_dimension(dimension);
  require_positive(sigma, "sigma");
  const double s4 = sigma * sigma * sigma * sigma;
  const double E = material.youngs_modulus();
  return dimension == 2 ? 3.0 * E / (4.0 * s4) : 4.0 * E / (5.0 * s4);
}

double critical_stretch_gk(const ElasticMaterial& material, double sigma, int dimension) {
  require_dimension(dimension);
  require_positive(sigma, "sigma");
  require_positive(material.energy_release_rate(), "energy release rate");
  const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);
  const double G0 = material.energy_release_rate();
  const double E = material.youngs_modulus();
  if (dimension == 2) {
    return std::sqrt(8.0 * sqrt_2pi * G0 / (45.0 * E * material.thickness() * sigma));
  }
  return std::sqrt(5.0 * sqrt_2pi * G0 / (48.0 * E * sigma));
}

double classical_micromodulus(const ElasticMaterial& material, double delta,
                              MicromodulusKind kind, double xi_norm) {
  require_positive(delta, "horizon");
  if (!(xi_norm >= 0.0)) throw ParameterError("bond length must be non-negative");
  if (xi_norm > delta) {
    throw OutOfHorizonError("bond length " + std::to_string(xi_norm) + " exceeds horizon " +
                            std::to_string(delta));
  }
  const double base = material.youngs_modulus() /
                      (std::numbers::pi * delta * delta * delta * material.thickness());
  if (kind == MicromodulusKind::constant) return 9.0 * base;
  return 27.0 * base * (1.0 - xi_norm / delta);
}

double classical_critical_stretch(const ElasticMaterial& material, double delta, int dimension) {
  require_dimension(dimension);
  require_positive(delta, "horizon");
  require_positive(material.energy_release_rate(), "energy release rate");
  const double G0 = material.energy_release_rate();
  const double E = material.youngs_modulus();
  if (dimension == 2) return std::sqrt(4.0 * std::numbers::pi * G0 / (9.0 * E * delta));
  return std::sqrt(5.0 * std::numbers::pi * G0 / (12.0 * E * delta));
}

double truncation_radius(double sigma, double chi2) {
  require_positive(sigma, "sigma");
  require_positive(chi2, "chi-square quantile");
  return sigma * std::sqrt(chi2);
}

GaussianInfluence GaussianInfluence::make(const ElasticMaterial& material, double sigma,
                                          int dimension, double chi2_quantile,
                                          std::optional<double> critical_stretch_override) {
  GaussianInfluence g;
  g.sigma = sigma;
  g.dimension = dimension;
  g.chi2_quantile = chi2_quantile;
  g.truncation_radius = peridyn::truncation_radius(sigma, chi2_quantile);
  g.spring_constant = peridyn::spring_constant(material, sigma, dimension);
  if (critical_stretch_override) {
    require_positive(*critical_stretch_override, "critical stretch");
    g.critical_stretch = *critical_stretch_override;
  } else if (material.energy_release_rate() > 0.0) {
    g.critical_stretch = critical_stretch_gk(material, sigma, dimension);
  } else {
    g.critical_stretch = std::numeric_limits<double>::infinity();
  }
  return g;
}

ClassicalHorizon ClassicalHorizon::make(const ElasticMaterial& material, double delta,
                                        MicromodulusKind kind, CorrectionMethod correction,
                                        int dimension,
                                        std::optional<double> critical_stretch_override) {
  require_positive(delta, "horizon");
  ClassicalHorizon c;
  c.delta = delta;
  c.micromodulus = kind;
  c.correction = correction;
  if (critical_stretch_override) {
    require_positive(*critical_stretch_override, "critical stretch");
    c.critical_stretch = *critical_stretch_override;
  } else if (material.energy_release_rate() > 0.0) {
    c.critical_stretch = classical_critical_stretch(material, delta, dimension);
  } else {
    c.critical_stretch = std::numeric_limits<double>::infinity();
  }
  return c;
}

}  // namespace peridyn
