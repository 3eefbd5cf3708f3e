#include "peridyn/integrators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "peridyn/errors.hpp"
#include "peridyn/parallel.hpp"

namespace peridyn {

DirichletCollar make_collar(const Lattice& lattice, double width,
                            const std::function<Vec3(const Vec3&)>& prescribed) {
  if (!(width >= 0.0)) throw ParameterError("collar width must be non-negative");
  DirichletCollar collar;
  collar.width = width;
  const double limit = width * (1.0 + 1e-12);
  for (std::size_t i = 0; i < lattice.node_count(); ++i) {
    const Vec3& p = lattice.positions[i];
    const double d = std::min({p.x - lattice.lower.x, lattice.upper.x - p.x,
                               p.y - lattice.lower.y, lattice.upper.y - p.y});
    if (d <= limit) {
      collar.nodes.push_back(i);
      collar.values.push_back(prescribed(p));
    }
  }
  return collar;
}

std::vector<bool> collar_mask(const Lattice& lattice, const DirichletCollar& collar) {
  std::vector<bool> mask(lattice.node_count(), false);
  for (std::size_t k : collar.nodes) mask.at(k) = true;
  return mask;
}

StaticSolution solve_static_linear(const ForceAssembler& assembler, const BondHealth& health,
                                   const DirichletCollar& collar,
                                   std::span<const Vec3> body_force, double tol,
                                   std::size_t max_iter, std::span<const Vec3> initial_guess,
                                   const ProgressFn& progress) {
  if (!assembler.model().is_linear()) {
    throw ParameterError("static solve requires a linear model");
  }
  if (!(tol > 0.0)) throw ParameterError("solver tolerance must be positive");
  const auto start = std::chrono::steady_clock::now();
  const Lattice& lat = assembler.lattice();
  const std::size_t n = lat.node_count();
  if (!body_force.empty() && body_force.size() != n) {
    throw ParameterError("body force size does not match the lattice");
  }
  const auto fixed = collar_mask(lat, collar);

  auto mask_collar = [&](std::vector<Vec3>& v) {
    for (std::size_t k : collar.nodes) v[k] = Vec3{};
  };
  // r = b + L u on the free nodes, zero on the collar.
  std::vector<Vec3> lu(n);
  auto residual_of = [&](const std::vector<Vec3>& u, std::vector<Vec3>& r) {
    assembler.apply_linear(u, health, lu);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = lu[i];
      if (!body_force.empty()) r[i] += body_force[i];
    }
    mask_collar(r);
  };

  std::vector<Vec3> u(n);
  for (std::size_t k = 0; k < collar.nodes.size(); ++k) u[collar.nodes[k]] = collar.values[k];
  std::vector<Vec3> r(n);
  residual_of(u, r);
  const double rhs_norm = std::sqrt(deterministic_dot(r, r));
  if (!initial_guess.empty()) {
    if (initial_guess.size() != n) throw ParameterError("initial guess size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (!fixed[i]) u[i] = initial_guess[i];
    }
    residual_of(u, r);
  }

  SolveReport report;
  const double reference = rhs_norm > 0.0 ? rhs_norm : 1.0;
  double rr = deterministic_dot(r, r);
  report.residual = std::sqrt(rr) / reference;
  std::vector<Vec3> p = r;
  std::vector<Vec3> ap(n);

  while (report.residual > tol && report.iterations < max_iter) {
    assembler.apply_linear(p, health, ap);
    // A = -L restricted to the free nodes.
    for (std::size_t i = 0; i < n; ++i) ap[i] = -ap[i];
    mask_collar(ap);
    const double pap = deterministic_dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += p[i] * alpha;
      r[i] -= ap[i] * alpha;
    }
    const double rr_new = deterministic_dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + p[i] * beta;
    ++report.iterations;
    report.residual = std::sqrt(rr) / reference;
    if (progress && report.iterations % 200 == 0) {
      char line[96];
      std::snprintf(line, sizeof line, "cg iteration %zu residual %.3e", report.iterations,
                    report.residual);
      progress(line);
    }
  }

  report.converged = report.residual <= tol;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!report.converged) {
    throw SolverError("conjugate gradient did not reach tolerance " + std::to_string(tol) +
                          " in " + std::to_string(report.iterations) + " iterations (residual " +
                          std::to_string(report.residual) + ")",
                      report);
  }
  return StaticSolution{std::move(u), report};
}

VerletIntegrator::VerletIntegrator(const ForceAssembler& assembler, double dt,
                                   std::vector<VelocityConstraint> constraints)
    : assembler_(&assembler), dt_(dt), constraints_(std::move(constraints)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("time step must be positive");
  force_.resize(assembler.lattice().node_count());
}

void VerletIntegrator::apply_constraints(KinematicState& state) const {
  for (const auto& c : constraints_) {
    for (std::size_t k : c.nodes) {
      state.velocity[k] = c.velocity;
      state.acceleration[k] = Vec3{};
    }
  }
}

void VerletIntegrator::initialize(KinematicState& state, const BondHealth& health) {
  const double rho = assembler_->model().material.density();
  assembler_->assemble(state.displacement, state.body_force, health, force_);
  for (std::size_t i = 0; i < state.size(); ++i) state.acceleration[i] = force_[i] * (1.0 / rho);
  apply_constraints(state);
}

StepResult VerletIntegrator::step(KinematicState& state, BondHealth& health) {
  const std::size_t n = state.size();
  const double rho = assembler_->model().material.density();
  const double half = 0.5 * dt_;

  apply_constraints(state);
  for (std::size_t i = 0; i < n; ++i) {
    state.velocity[i] += state.acceleration[i] * half;
    state.displacement[i] += state.velocity[i] * dt_;
  }
  apply_constraints(state);

  StepResult result;
  try {
    result.diagnostics =
        assembler_->assemble(state.displacement, state.body_force, health, force_);
  } catch (const EvaluationError& e) {
    throw EvaluationError("integration failure at step " + std::to_string(steps_ + 1) + ": " +
                          e.what());
  }
  for (std::size_t i = 0; i < n; ++i) {
    state.acceleration[i] = force_[i] * (1.0 / rho);
  }
  apply_constraints(state);
  for (std::size_t i = 0; i < n; ++i) state.velocity[i] += state.acceleration[i] * half;
  apply_constraints(state);
  state.time += dt_;
  ++steps_;

  const double sc = assembler_->model().critical_stretch();
  if (std::isfinite(sc)) {
    result.new_breaks =
        update_bond_health(state.displacement, assembler_->lattice(), health, sc);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(state.displacement[i]) || !is_finite(state.velocity[i])) {
      throw EvaluationError("integration failure at step " + std::to_string(steps_) +
                            ": non-finite state at node " + std::to_string(i));
    }
  }
  return result;
}

StepResult step_velocity_verlet(KinematicState& state, const Lattice& lattice,
                                BondHealth& health, const ForceModel& model, double dt,
                                std::span<const VelocityConstraint> constraints) {
  ForceAssembler assembler(lattice, model);
  VerletIntegrator integrator(assembler, dt, {constraints.begin(), constraints.end()});
  return integrator.step(state, health);
}

double stable_dt_estimate(const ForceAssembler& assembler, const ElasticMaterial& material) {
  const auto k = assembler.stiffness_bound();
  double best = std::numeric_limits<double>::infinity();
  for (double ki : k) {
    if (ki > 0.0) best = std::min(best, std::sqrt(2.0 * material.density() / ki));
  }
  return 0.5 * best;
}

}  // namespace peridyn
