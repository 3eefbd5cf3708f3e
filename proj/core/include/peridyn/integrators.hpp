#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "peridyn/force.hpp"
#include "peridyn/lattice.hpp"
#include "peridyn/vec.hpp"

namespace peridyn {

/// Optional progress sink; receives one line per report.
using ProgressFn = std::function<void(std::string_view)>;

/// Boundary layer of nodes whose displacement is prescribed.
struct DirichletCollar {
  std::vector<std::size_t> nodes;
  std::vector<Vec3> values;
  double width = 0.0;
};

/// Nodes whose center lies within `width` of the domain boundary, with the
/// prescribed field evaluated at their reference positions.
DirichletCollar make_collar(const Lattice& lattice, double width,
                            const std::function<Vec3(const Vec3&)>& prescribed);

/// Per-node mask, true on collar nodes.
std::vector<bool> collar_mask(const Lattice& lattice, const DirichletCollar& collar);

struct SolveReport {
  std::size_t iterations = 0;
  /// Residual 2-norm relative to the reduced right-hand side.
  double residual = 0.0;
  double wall_seconds = 0.0;
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(report) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

struct StaticSolution {
  std::vector<Vec3> displacement;
  SolveReport report;
};

/// Solves sum_j lambda C(xi)(u_j - u_i) V_j + b_i = 0 on the non-collar nodes
/// with conjugate gradients on the negated operator. Collar values are
/// eliminated to the right-hand side. Requires a linear model.
///
/// Convergence is declared when the residual 2-norm drops below `tol` times the
/// norm of the reduced right-hand side (body force plus collar coupling).
/// Throws SolverError carrying the report when max_iter is reached first.
StaticSolution solve_static_linear(const ForceAssembler& assembler, const BondHealth& health,
                                   const DirichletCollar& collar,
                                   std::span<const Vec3> body_force, double tol,
                                   std::size_t max_iter,
                                   std::span<const Vec3> initial_guess = {},
                                   const ProgressFn& progress = {});

/// Nodes held at a fixed velocity with zero acceleration.
struct VelocityConstraint {
  std::vector<std::size_t> nodes;
  Vec3 velocity;
};

struct StepResult {
  std::size_t new_breaks = 0;
  ForceDiagnostics diagnostics;
};

/// Velocity-Verlet driver that reuses one assembler and force buffer.
///
/// step(): half kick with the stored acceleration, drift, re-assemble, half
/// kick, then break bonds at the model's critical stretch. Constrained nodes
/// keep their prescribed velocity and zero acceleration throughout.
class VerletIntegrator {
 public:
  VerletIntegrator(const ForceAssembler& assembler, double dt,
                   std::vector<VelocityConstraint> constraints = {});

  /// Computes the acceleration of the current displacement field and applies
  /// the constraints. Call once before the first step.
  void initialize(KinematicState& state, const BondHealth& health);
  StepResult step(KinematicState& state, BondHealth& health);

  double dt() const { return dt_; }
  std::size_t steps_taken() const { return steps_; }

 private:
  void apply_constraints(KinematicState& state) const;

  const ForceAssembler* assembler_;
  double dt_;
  std::vector<VelocityConstraint> constraints_;
  std::vector<Vec3> force_;
  std::size_t steps_ = 0;
};

/// One velocity-Verlet step. Assumes state.acceleration matches the current
/// displacement (see VerletIntegrator::initialize).
StepResult step_velocity_verlet(KinematicState& state, const Lattice& lattice,
                                BondHealth& health, const ForceModel& model, double dt,
                                std::span<const VelocityConstraint> constraints = {});

/// 0.5 * min_i sqrt(2 rho / sum_j |C(xi_ij)| V_j). Advisory only.
double stable_dt_estimate(const ForceAssembler& assembler, const ElasticMaterial& material);

}  // namespace peridyn
