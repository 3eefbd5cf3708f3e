#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peridyn/force.hpp"
#include "peridyn/integrators.hpp"
#include "peridyn/lattice.hpp"
#include "peridyn/material.hpp"

namespace peridyn {

/// Resolved run parameters for one scenario. All physical values are SI.
struct ScenarioConfig {
  std::string scenario = "converge";

  // [material]
  double youngs_modulus = 1.92e11;
  double poisson_ratio = 1.0 / 3.0;
  double density = 8000.0;
  double energy_release_rate = 0.0;
  double thickness = 0.0025;

  // [model]
  ModelKind model = ModelKind::gk_linear;
  std::optional<double> sigma_ratio = 1.0;
  std::optional<double> delta_ratio;
  double chi2 = 36.0;
  CorrectionMethod correction = CorrectionMethod::none;
  MicromodulusKind micromodulus = MicromodulusKind::constant;
  std::optional<double> critical_stretch;

  // [grid]
  /// Nodes per axis for each refinement level. Kalthoff runs use the first
  /// entry as the count along the impacted edge and half of it (rounded up)
  /// across.
  std::vector<std::size_t> levels{51, 101, 201};

  // [run]
  double dt = 8.7e-8;
  std::size_t steps = 1000;
  double tolerance = 1e-11;
  std::size_t max_iterations = 50000;
  std::size_t snapshot_every = 50;
  double impact_velocity = 32.0;
  double damage_threshold = 0.35;
  /// Crack-angle search window as a fraction of the notch length.
  double angle_window = 0.25;
  std::filesystem::path output_dir = "out";

  /// Paper-default settings for converge, crack-plate, kalthoff or operator-check.
  static ScenarioConfig defaults(const std::string& scenario);

  /// Throws ConfigError unless exactly one of sigma_ratio / delta_ratio is set
  /// and it matches the model family.
  void validate() const;

  ElasticMaterial material() const;
  /// Model for grid spacing dx.
  ForceModel force_model(double dx) const;
};

/// Errors per refinement level and observed rates between consecutive levels.
struct ConvergenceReport {
  struct Level {
    std::size_t n = 0;
    double dx = 0.0;
    double l2_error = 0.0;
    std::size_t iterations = 0;
  };
  std::vector<Level> levels;
  std::vector<double> rates;

  void add(const Level& level);
};

/// log(e_k / e_{k+1}) / log(dx_k / dx_{k+1}).
double convergence_rate(double e_coarse, double e_fine, double dx_coarse, double dx_fine);

/// Square region partitioned into n x n cells, padded outward on every side
/// by `pad` whole cells so the prescribed layer surrounds the region.
struct PaddedSquare {
  DomainSpec domain;
  std::size_t pad = 0;
  double dx = 0.0;
  double collar_width = 0.0;  ///< pad * dx
};

/// pad is the smallest cell count covering the model's interaction radius
/// (truncation radius, or delta plus half a cell for QWJ).
PaddedSquare padded_square(const Vec3& lower, double side, std::size_t n, const ForceModel& model,
                           double thickness);

/// Mask of the n x n cells of the unpadded region.
std::vector<bool> region_mask(const Lattice& lattice, const PaddedSquare& square);

// ---- manufactured solution on the quasi-static plate ------------------------

/// (sin(xy), cos(xy)).
Vec3 manufactured_displacement(const Vec3& x);

/// Negated local elasticity operator of the manufactured field, so that the
/// field is in equilibrium with this body force.
Vec3 manufactured_body_force(const Vec3& x, double youngs_modulus);

/// Volume-weighted RMS of the difference over nodes where mask is true.
double l2_error(std::span<const Vec3> numeric, std::span<const Vec3> exact,
                const Lattice& lattice, const std::vector<bool>& mask);

/// Plate [0, 0.5]^2 in N x N cells, manufactured field prescribed on a layer
/// surrounding the plate at least as wide as the interaction radius, static
/// linear solve per level. Errors are measured over the plate cells.
ConvergenceReport run_convergence_study(const ScenarioConfig& config,
                                        const ProgressFn& progress = {});

// ---- plate with a pre-existing crack ---------------------------------------

/// Horizontal straight crack.
struct CrackGeometry {
  Vec3 center{1.0, 1.0, 0.0};
  double half_length = 0.5;
};

/// Closed-form plane-strain displacement around a traction-free crack under
/// unit remote load, using the material's shear modulus and Poisson ratio.
/// Throws SingularPointError on the crack segment.
Vec3 crack_analytic_displacement(const Vec3& x, const ElasticMaterial& material,
                                 const CrackGeometry& crack);

/// Material of the crack-plate oracle (bulk modulus 4e4, Poisson 1/4).
ElasticMaterial crack_plate_oracle_material();

struct ProfilePoint {
  double x = 0.0;
  double numeric = 0.0;
  double exact = 0.0;
};

struct CrackPlateResult {
  ConvergenceReport report;
  /// Horizontal displacement on the node row just above the crack line at the
  /// finest level, both series scaled by the max |exact| on that row.
  std::vector<ProfilePoint> profile;
  /// max |numeric - exact| over the profile (scaled units).
  double profile_max_deviation = 0.0;
  std::vector<std::size_t> severed_bonds;
};

/// Region [0, 2]^2 with a unit crack along the horizontal midline, analytic
/// field prescribed on a surrounding layer.
CrackPlateResult run_crack_plate(const ScenarioConfig& config, const ProgressFn& progress = {});

// ---- Kalthoff-Winkler -------------------------------------------------------

struct KalthoffGeometry {
  double length = 0.2;  ///< along the impacted edge
  double width = 0.1;   ///< along the notches
  double thickness = 0.009;
  double notch_length = 0.05;
  double notch_width = 0.0015;
  double notch_separation = 0.05;
  double impactor_diameter = 0.05;
  double impactor_height = 0.05;
};

struct KalthoffSetup {
  KalthoffGeometry geometry;
  Lattice lattice;
  BondHealth health;
  KinematicState state;
  std::vector<VelocityConstraint> constraints;
  ForceModel model;
  std::array<Vec3, 2> notch_tips;
  Vec3 notch_direction{0.0, 1.0, 0.0};
};

/// Plate with two notches entering from the impacted edge (y = 0). The strip
/// between the notches, three rows deep, moves at the impact velocity.
KalthoffSetup setup_kalthoff(const ScenarioConfig& config,
                             const KalthoffGeometry& geometry = {});

/// Angle in degrees in [0, 90] between the notch direction and the least-squares
/// line through the tip fitted to damaged nodes (phi > threshold) within
/// `window` of the tip and ahead of it. Throws EvaluationError if fewer than
/// ten nodes qualify.
double measure_crack_angle(const DamageField& damage, const Lattice& lattice, const Vec3& tip,
                           const Vec3& notch_direction, double threshold = 0.35,
                           double window = 0.0125);

struct KalthoffResult {
  std::size_t steps = 0;
  std::size_t broken_bonds = 0;
  std::array<double, 2> tip_angles{0.0, 0.0};
  double mean_angle = 0.0;
  double stable_dt = 0.0;
  DamageField damage;
  /// Broken-bond count after each step.
  std::vector<std::size_t> break_history;
};

/// Called with (step index, setup, damage) every snapshot_every steps and at the end.
using SnapshotFn =
    std::function<void(std::size_t, const KalthoffSetup&, const DamageField&)>;

KalthoffResult run_kalthoff(const ScenarioConfig& config, const SnapshotFn& snapshot = {},
                            const ProgressFn& progress = {});

// ---- operator checks --------------------------------------------------------

/// Discrete Gaussian moments on a square grid centered at the origin.
struct MomentCheck {
  double sigma = 0.0;
  double mass = 0.0;
  double m40 = 0.0;  ///< sum G x^4 dA, expected 3 sigma^4
  double m22 = 0.0;  ///< expected sigma^4
  double m04 = 0.0;  ///< expected 3 sigma^4
  double max_odd = 0.0;  ///< max |third-order or mixed-odd fourth moment| / sigma^4
  double max_relative_residual = 0.0;
};

MomentCheck gaussian_moment_check(double sigma, double dx, double radius);

struct QuadraticCheck {
  /// Measured and expected local coefficients for u_xx, u_yy, v_xy (x row)
  /// and v_xx, v_yy, u_xy (y row).
  std::array<double, 6> measured{};
  std::array<double, 6> expected{};
  double max_relative_error = 0.0;
  /// Largest off-pattern component relative to E.
  double max_spurious = 0.0;
};

/// Linear Gaussian operator applied to the six quadratic fields at the
/// center node of an n x n grid on [0, 0.5]^2.
QuadraticCheck quadratic_consistency_check(double youngs_modulus, std::size_t n,
                                           double sigma_ratio, double chi2);

struct EnergyCheck {
  double computed = 0.0;
  double expected_kernel = 0.0;    ///< 2 beta s^2 sigma^4
  double expected_continuum = 0.0;  ///< 3 E s^2 / 2
};

/// Uniform stretch s on a grid with spacing sigma / sigma_ratio, energy density at
/// the center node.
EnergyCheck energy_equivalence_check(double youngs_modulus, double stretch, double sigma_ratio,
                                     double chi2);

}  // namespace peridyn
