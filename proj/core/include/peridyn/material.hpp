#pragma once

#include <optional>
#include <string_view>

namespace peridyn {

/// Isotropic linear-elastic constants in SI units.
///
/// Bond-based models fix the Poisson ratio: 1/3 in the planar (plane-stress)
/// model and 1/4 in 3D. Use bond_based() to get a material that satisfies this,
/// or check_bond_based() to validate one built by hand.
class ElasticMaterial {
 public:
  ElasticMaterial(double youngs_modulus, double poisson_ratio, double density,
                  double energy_release_rate, double thickness = 1.0);

  static ElasticMaterial bond_based(int dimension, double youngs_modulus, double density,
                                    double energy_release_rate, double thickness = 1.0);

  /// Throws ParameterError if the Poisson ratio is not the one the bond-based
  /// model of the given dimension implies.
  void check_bond_based(int dimension) const;

  double youngs_modulus() const { return E_; }
  double poisson_ratio() const { return nu_; }
  double density() const { return rho_; }
  double energy_release_rate() const { return G0_; }
  double thickness() const { return h_; }
  double shear_modulus() const { return E_ / (2.0 * (1.0 + nu_)); }
  /// Three-dimensional bulk modulus E / (3(1 - 2 nu)).
  double bulk_modulus() const { return E_ / (3.0 * (1.0 - 2.0 * nu_)); }

 private:
  double E_;
  double nu_;
  double rho_;
  double G0_;
  double h_;
};

enum class MicromodulusKind { constant, conical };

/// Per-bond volume-correction rule for bounded horizons.
enum class CorrectionMethod { none, fa, lammps, qwj };

std::string_view to_string(CorrectionMethod m);
std::string_view to_string(MicromodulusKind k);
std::optional<CorrectionMethod> parse_correction_method(std::string_view s);
std::optional<MicromodulusKind> parse_micromodulus_kind(std::string_view s);

// Closed-form scalar functions. All throw ParameterError on invalid input.

/// Isotropic Gaussian density (2 pi sigma^2)^(-d/2) exp(-|xi|^2 / (2 sigma^2)).
double gaussian_density(double xi_norm, double sigma, int dimension);

/// Spring constant of the Gaussian-kernel model from energy equivalence.
double spring_constant(const ElasticMaterial& material, double sigma, int dimension);

/// Critical bond stretch of the Gaussian-kernel model from the energy release rate.
double critical_stretch_gk(const ElasticMaterial& material, double sigma, int dimension);

/// Plane-stress micromodulus of the bounded-horizon model. Throws
/// OutOfHorizonError when xi_norm > delta.
double classical_micromodulus(const ElasticMaterial& material, double delta,
                              MicromodulusKind kind, double xi_norm);

double classical_critical_stretch(const ElasticMaterial& material, double delta, int dimension);

/// sigma * sqrt(chi2).
double truncation_radius(double sigma, double chi2);

/// Parameters of the Gaussian influence function with chi-square truncation.
struct GaussianInfluence {
  double sigma = 0.0;
  int dimension = 2;
  double chi2_quantile = 36.0;
  double truncation_radius = 0.0;
  double spring_constant = 0.0;
  /// +inf when the material has no energy release rate and no override is given.
  double critical_stretch = 0.0;

  static GaussianInfluence make(const ElasticMaterial& material, double sigma, int dimension,
                                double chi2_quantile,
                                std::optional<double> critical_stretch_override = std::nullopt);
};

/// Bounded-horizon (classical) bond-based model parameters.
struct ClassicalHorizon {
  double delta = 0.0;
  MicromodulusKind micromodulus = MicromodulusKind::constant;
  double critical_stretch = 0.0;
  CorrectionMethod correction = CorrectionMethod::none;

  static ClassicalHorizon make(const ElasticMaterial& material, double delta,
                               MicromodulusKind kind, CorrectionMethod correction,
                               int dimension = 2,
                               std::optional<double> critical_stretch_override = std::nullopt);
};

}  // namespace peridyn
