#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "peridyn/lattice.hpp"
#include "peridyn/material.hpp"
#include "peridyn/vec.hpp"

namespace peridyn {

enum class ModelKind { gk_nonlinear, gk_linear, classical_nonlinear, classical_linear };

std::string_view to_string(ModelKind k);
std::optional<ModelKind> parse_model_kind(std::string_view s);

/// Constitutive selection for force evaluation: one of the Gaussian-kernel or
/// bounded-horizon laws, nonlinear or linearized.
struct ForceModel {
  ModelKind kind = ModelKind::gk_linear;
  ElasticMaterial material;
  GaussianInfluence gk;
  ClassicalHorizon classical;

  static ForceModel gaussian(const ElasticMaterial& material, const GaussianInfluence& influence,
                             bool linearized);
  static ForceModel bounded(const ElasticMaterial& material, const ClassicalHorizon& horizon,
                            bool linearized);

  bool is_gaussian() const {
    return kind == ModelKind::gk_nonlinear || kind == ModelKind::gk_linear;
  }
  bool is_linear() const {
    return kind == ModelKind::gk_linear || kind == ModelKind::classical_linear;
  }
  double critical_stretch() const {
    return is_gaussian() ? gk.critical_stretch : classical.critical_stretch;
  }
  /// Factor applied to the reference cell volume in every discrete sum. The
  /// planar Gaussian kernel is an area density, so its sums run over cell
  /// areas (volume / thickness); the plane-stress micromodulus already carries
  /// 1/thickness.
  double quadrature_scale() const;

  NeighborMode neighbor_mode() const {
    return is_gaussian() ? NeighborMode::gk_truncation : NeighborMode::bounded_horizon;
  }
  double neighbor_radius() const {
    return is_gaussian() ? gk.truncation_radius : classical.delta;
  }
  CorrectionMethod correction() const {
    return is_gaussian() ? CorrectionMethod::none : classical.correction;
  }
};

/// Lattice with the neighbor list the model requires.
Lattice prepare_lattice(const DomainSpec& domain, const ForceModel& model);

/// Per-node fields of a dynamic or static run. Body force b is a force density (N/m^3).
struct KinematicState {
  std::vector<Vec3> displacement;
  std::vector<Vec3> velocity;
  std::vector<Vec3> acceleration;
  std::vector<Vec3> body_force;
  double time = 0.0;

  explicit KinematicState(std::size_t nodes = 0)
      : displacement(nodes), velocity(nodes), acceleration(nodes), body_force(nodes) {}
  std::size_t size() const { return displacement.size(); }
};

struct DamageField {
  std::vector<double> phi;
  std::size_t empty_neighborhoods = 0;
};

/// Counters accumulated during evaluation.
struct ForceDiagnostics {
  std::size_t collapsed_bonds = 0;
};

/// (|xi + eta| - |xi|) / |xi|. Throws DegenerateBondError for |xi| == 0.
double bond_stretch(const Vec3& xi, const Vec3& eta);

/// Nonlinear Gaussian-kernel pairwise force density
/// mu * (xi+eta)/|xi+eta| * beta * s * G(xi) * |xi|^3.
/// A collapsed bond (|xi + eta| == 0) yields zero and bumps diag->collapsed_bonds.
Vec3 pairwise_force_gk(const Vec3& xi, const Vec3& eta, const GaussianInfluence& influence,
                       double mu, ForceDiagnostics* diag = nullptr);

/// Linearized Gaussian-kernel force density C(xi) eta.
Vec3 pairwise_force_gk_linear(const Vec3& xi, const Vec3& eta, const ElasticMaterial& material,
                              double sigma, double mu, int dimension = 2);

/// Bounded-horizon force density, nonlinear or linearized. Throws
/// OutOfHorizonError for |xi| > delta.
Vec3 pairwise_force_classical(const Vec3& xi, const Vec3& eta, const ClassicalHorizon& horizon,
                              const ElasticMaterial& material, double mu, bool linearized,
                              ForceDiagnostics* diag = nullptr);

/// Matrix-free evaluator with per-bond coefficients cached for one lattice
/// and model. Parallel over target nodes; each node sums its bonds in
/// neighbor-index order, so results do not depend on the thread count.
class ForceAssembler {
 public:
  ForceAssembler(const Lattice& lattice, const ForceModel& model);

  const Lattice& lattice() const { return *lattice_; }
  const ForceModel& model() const { return model_; }

  /// F_i = sum_j lambda_ij f(xi_ij, eta_ij, mu_ij) V_j + b_i. Throws
  /// EvaluationError naming the node pair if a bond contribution is not finite.
  ForceDiagnostics assemble(std::span<const Vec3> displacement, std::span<const Vec3> body_force,
                            const BondHealth& health, std::span<Vec3> out) const;

  /// Internal part only, linearized law regardless of model kind:
  /// out_i = sum_j w_ij C(xi_ij) (u_j - u_i). Used by the static solver.
  void apply_linear(std::span<const Vec3> displacement, const BondHealth& health,
                    std::span<Vec3> out) const;

  /// Diagonal 2x2 blocks sum_j w_ij C(xi_ij) per node (xx, xy, yy), intact bonds only.
  std::vector<std::array<double, 3>> linear_diagonal(const BondHealth& health) const;

  /// sum_j |C(xi_ij)| w_ij per node, an upper bound of the local stiffness.
  std::vector<double> stiffness_bound() const;

 private:
  const Lattice* lattice_;
  ForceModel model_;
  // Nonlinear: f = weight * s * e, with e the deformed bond direction.
  // Linear:    f = weight * (xi . eta) * xi.
  std::vector<double> weight_;
  std::vector<double> linear_weight_;
  std::vector<double> length_;
};

/// Convenience wrapper building a ForceAssembler for a single evaluation.
std::vector<Vec3> assemble_internal_force(const KinematicState& state, const Lattice& lattice,
                                          const BondHealth& health, const ForceModel& model,
                                          ForceDiagnostics* diag = nullptr);

/// Breaks every intact bond whose current stretch is >= s_critical. Both
/// orientations of a bond see the same stretch bit-for-bit and break together.
/// Returns the number of bond entries newly broken.
std::size_t update_bond_health(std::span<const Vec3> displacement, const Lattice& lattice,
                               BondHealth& health, double s_critical);

/// phi_i = 1 - sum_j mu_ij V_j / sum_j V_j. Empty neighborhoods get phi = 0.
DamageField damage_field(const Lattice& lattice, const BondHealth& health);

/// W_i = 1/2 sum_j (beta s^2 |xi|^4 G(xi) / 2) V_j for the Gaussian kernel.
double strain_energy_density(std::size_t node, std::span<const Vec3> displacement,
                             const Lattice& lattice, const ForceModel& model);

}  // namespace peridyn
