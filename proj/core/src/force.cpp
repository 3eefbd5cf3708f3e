#include "peridyn/force.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "peridyn/errors.hpp"

namespace peridyn {

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::gk_nonlinear: return "gk-nonlinear";
    case ModelKind::gk_linear: return "gk-linear";
    case ModelKind::classical_nonlinear: return "classical-nonlinear";
    case ModelKind::classical_linear: return "classical-linear";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  if (s == "gk-nonlinear") return ModelKind::gk_nonlinear;
  if (s == "gk-linear") return ModelKind::gk_linear;
  if (s == "classical-nonlinear") return ModelKind::classical_nonlinear;
  if (s == "classical-linear") return ModelKind::classical_linear;
  return std::nullopt;
}

ForceModel ForceModel::gaussian(const ElasticMaterial& material,
                                const GaussianInfluence& influence, bool linearized) {
  material.check_bond_based(influence.dimension);
  return ForceModel{linearized ? ModelKind::gk_linear : ModelKind::gk_nonlinear, material,
                    influence, ClassicalHorizon{}};
}

ForceModel ForceModel::bounded(const ElasticMaterial& material, const ClassicalHorizon& horizon,
                               bool linearized) {
  material.check_bond_based(2);
  return ForceModel{linearized ? ModelKind::classical_linear : ModelKind::classical_nonlinear,
                    material, GaussianInfluence{}, horizon};
}

double ForceModel::quadrature_scale() const {
  if (is_gaussian() && gk.dimension == 2) return 1.0 / material.thickness();
  return 1.0;
}

Lattice prepare_lattice(const DomainSpec& domain, const ForceModel& model) {
  return build_neighbor_list(build_uniform_grid(domain), model.neighbor_radius(),
                             model.neighbor_mode(), model.correction());
}

double bond_stretch(const Vec3& xi, const Vec3& eta) {
  const double len = norm(xi);
  if (!(len > 0.0)) throw DegenerateBondError("zero-length reference bond");
  return (norm(xi + eta) - len) / len;
}

namespace {

void require_finite(const Vec3& xi, const Vec3& eta) {
  if (!is_finite(xi) || !is_finite(eta)) throw EvaluationError("non-finite bond input");
}

// mu * e * magnitude_per_stretch * s with e the deformed direction.
Vec3 central_force(const Vec3& xi, const Vec3& eta, double stiffness, double mu,
                   ForceDiagnostics* diag) {
  const double len = norm(xi);
  if (!(len > 0.0)) throw DegenerateBondError("zero-length reference bond");
  if (mu == 0.0) return {};
  const Vec3 y = xi + eta;
  const double ylen = norm(y);
  if (ylen == 0.0) {
    if (diag) ++diag->collapsed_bonds;
    return {};
  }
  const double s = (ylen - len) / len;
  return y * (mu * stiffness * s / ylen);
}

}  // namespace

Vec3 pairwise_force_gk(const Vec3& xi, const Vec3& eta, const GaussianInfluence& influence,
                       double mu, ForceDiagnostics* diag) {
  require_finite(xi, eta);
  const double len = norm(xi);
  const double g = gaussian_density(len, influence.sigma, influence.dimension);
  return central_force(xi, eta, influence.spring_constant * g * len * len * len, mu, diag);
}

Vec3 pairwise_force_gk_linear(const Vec3& xi, const Vec3& eta, const ElasticMaterial& material,
                              double sigma, double mu, int dimension) {
  require_finite(xi, eta);
  const double len = norm(xi);
  if (!(len > 0.0)) throw DegenerateBondError("zero-length reference bond");
  const double E = material.youngs_modulus();
  const double expo = std::exp(-dot(xi, xi) / (2.0 * sigma * sigma));
  double prefactor = 0.0;
  if (dimension == 2) {
    prefactor = 3.0 * E / (8.0 * std::numbers::pi * std::pow(sigma, 6));
  } else if (dimension == 3) {
    prefactor = 4.0 * E /
                (5.0 * std::sqrt(8.0 * std::pow(std::numbers::pi, 3)) * std::pow(sigma, 7));
  } else {
    throw ParameterError("unsupported dimension");
  }
  return xi * (mu * prefactor * expo * dot(xi, eta));
}

Vec3 pairwise_force_classical(const Vec3& xi, const Vec3& eta, const ClassicalHorizon& horizon,
                              const ElasticMaterial& material, double mu, bool linearized,
                              ForceDiagnostics* diag) {
  require_finite(xi, eta);
  const double len = norm(xi);
  if (!(len > 0.0)) throw DegenerateBondError("zero-length reference bond");
  const double c = classical_micromodulus(material, horizon.delta, horizon.micromodulus, len);
  if (linearized) return xi * (mu * c * dot(xi, eta) / (len * len * len));
  return central_force(xi, eta, c, mu, diag);
}

ForceAssembler::ForceAssembler(const Lattice& lattice, const ForceModel& model)
    : lattice_(&lattice), model_(model) {
  if (!lattice.has_bonds()) throw ParameterError("lattice has no neighbor list");
  const std::size_t nb = lattice.bond_count();
  weight_.resize(nb);
  linear_weight_.resize(nb);
  length_.resize(nb);
  const double scale = model.quadrature_scale();
  for (std::size_t i = 0; i < lattice.node_count(); ++i) {
    for (std::size_t b = lattice.offsets[i]; b < lattice.offsets[i + 1]; ++b) {
      const double len = norm(lattice.xi[b]);
      const double vol = lattice.lambda[b] * lattice.volumes[lattice.neighbors[b]] * scale;
      length_[b] = len;
      if (model.is_gaussian()) {
        const double bg = model.gk.spring_constant *
                          gaussian_density(len, model.gk.sigma, model.gk.dimension);
        weight_[b] = vol * bg * len * len * len;
        linear_weight_[b] = vol * bg;
      } else {
        // QWJ admits bonds out to delta + h/2; the micromodulus is held at its
        // value on the horizon there.
        const double c = classical_micromodulus(model.material, model.classical.delta,
                                                model.classical.micromodulus,
                                                std::min(len, model.classical.delta));
        weight_[b] = vol * c;
        linear_weight_[b] = vol * c / (len * len * len);
      }
    }
  }
}

ForceDiagnostics ForceAssembler::assemble(std::span<const Vec3> u, std::span<const Vec3> body,
                                          const BondHealth& health, std::span<Vec3> out) const {
  const Lattice& lat = *lattice_;
  const auto n = static_cast<std::int64_t>(lat.node_count());
  const bool linear = model_.is_linear();
  const auto flags = health.flags();
  std::size_t collapsed = 0;
  std::int64_t bad_node = -1;

#pragma omp parallel for schedule(static) reduction(+ : collapsed)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    Vec3 f{};
    const Vec3 ui = u[i];
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      if (!flags[b]) continue;
      const Vec3& xi = lat.xi[b];
      const Vec3 eta = u[lat.neighbors[b]] - ui;
      if (linear) {
        f += xi * (linear_weight_[b] * dot(xi, eta));
      } else {
        const Vec3 y = xi + eta;
        const double ylen = norm(y);
        if (ylen == 0.0) {
          ++collapsed;
          continue;
        }
        const double s = (ylen - length_[b]) / length_[b];
        f += y * (weight_[b] * s / ylen);
      }
    }
    if (!body.empty()) f += body[i];
    out[i] = f;
    if (!is_finite(f)) {
#pragma omp critical(peridyn_bad_node)
      if (bad_node < 0 || ii < bad_node) bad_node = ii;
    }
  }

  if (bad_node >= 0) {
    const auto i = static_cast<std::size_t>(bad_node);
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      const Vec3 eta = u[lat.neighbors[b]] - u[i];
      if (!is_finite(eta) || !is_finite(lat.xi[b])) {
        throw EvaluationError("non-finite contribution on bond (" + std::to_string(i) + ", " +
                              std::to_string(lat.neighbors[b]) + ")");
      }
    }
    throw EvaluationError("non-finite force at node " + std::to_string(i));
  }
  return ForceDiagnostics{collapsed};
}

void ForceAssembler::apply_linear(std::span<const Vec3> u, const BondHealth& health,
                                  std::span<Vec3> out) const {
  const Lattice& lat = *lattice_;
  const auto n = static_cast<std::int64_t>(lat.node_count());
  const auto flags = health.flags();
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    Vec3 f{};
    const Vec3 ui = u[i];
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      if (!flags[b]) continue;
      const Vec3& xi = lat.xi[b];
      f += xi * (linear_weight_[b] * dot(xi, u[lat.neighbors[b]] - ui));
    }
    out[i] = f;
  }
}

std::vector<std::array<double, 3>> ForceAssembler::linear_diagonal(const BondHealth& health) const {
  const Lattice& lat = *lattice_;
  std::vector<std::array<double, 3>> diag(lat.node_count(), {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < lat.node_count(); ++i) {
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      if (!health.intact(b)) continue;
      const Vec3& xi = lat.xi[b];
      diag[i][0] += linear_weight_[b] * xi.x * xi.x;
      diag[i][1] += linear_weight_[b] * xi.x * xi.y;
      diag[i][2] += linear_weight_[b] * xi.y * xi.y;
    }
  }
  return diag;
}

std::vector<double> ForceAssembler::stiffness_bound() const {
  const Lattice& lat = *lattice_;
  std::vector<double> k(lat.node_count(), 0.0);
  for (std::size_t i = 0; i < lat.node_count(); ++i) {
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      // |C(xi)| for the rank-one tensor is w |xi|^2.
      k[i] += linear_weight_[b] * dot(lat.xi[b], lat.xi[b]);
    }
  }
  return k;
}

std::vector<Vec3> assemble_internal_force(const KinematicState& state, const Lattice& lattice,
                                          const BondHealth& health, const ForceModel& model,
                                          ForceDiagnostics* diag) {
  if (state.size() != lattice.node_count() || health.size() != lattice.bond_count()) {
    throw ParameterError("state, lattice and bond health sizes disagree");
  }
  ForceAssembler assembler(lattice, model);
  std::vector<Vec3> out(lattice.node_count());
  const auto d = assembler.assemble(state.displacement, state.body_force, health, out);
  if (diag) diag->collapsed_bonds += d.collapsed_bonds;
  return out;
}

std::size_t update_bond_health(std::span<const Vec3> u, const Lattice& lattice,
                               BondHealth& health, double s_critical) {
  if (!(s_critical > 0.0)) throw ParameterError("critical stretch must be positive");
  const auto n = static_cast<std::int64_t>(lattice.node_count());
  std::size_t broken = 0;
  // Each node writes only its own bond entries; the mirrored entry computes
  // the identical stretch on its owner's pass.
#pragma omp parallel for schedule(static) reduction(+ : broken)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t b = lattice.offsets[i]; b < lattice.offsets[i + 1]; ++b) {
      if (!health.intact(b)) continue;
      const Vec3& xi = lattice.xi[b];
      const double len = norm(xi);
      const double s = (norm(xi + (u[lattice.neighbors[b]] - u[i])) - len) / len;
      if (s >= s_critical) {
        health.sever(b);
        ++broken;
      }
    }
  }
  return broken;
}

DamageField damage_field(const Lattice& lattice, const BondHealth& health) {
  DamageField out;
  const std::size_t n = lattice.node_count();
  out.phi.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    double intact = 0.0;
    for (std::size_t b = lattice.offsets[i]; b < lattice.offsets[i + 1]; ++b) {
      const double v = lattice.volumes[lattice.neighbors[b]];
      total += v;
      intact += health.mu(b) * v;
    }
    if (total == 0.0) {
      ++out.empty_neighborhoods;
      continue;
    }
    out.phi[i] = 1.0 - intact / total;
  }
  return out;
}

double strain_energy_density(std::size_t node, std::span<const Vec3> u, const Lattice& lattice,
                             const ForceModel& model) {
  if (!model.is_gaussian()) throw ParameterError("strain energy density needs a Gaussian model");
  const double scale = model.quadrature_scale();
  double w = 0.0;
  for (std::size_t b = lattice.offsets[node]; b < lattice.offsets[node + 1]; ++b) {
    const Vec3& xi = lattice.xi[b];
    const double len = norm(xi);
    const double s = bond_stretch(xi, u[lattice.neighbors[b]] - u[node]);
    const double g = gaussian_density(len, model.gk.sigma, model.gk.dimension);
    const double pair = model.gk.spring_constant * s * s * len * len * len * len * g / 2.0;
    w += pair * lattice.lambda[b] * lattice.volumes[lattice.neighbors[b]] * scale;
  }
  return 0.5 * w;
}

}  // namespace peridyn
