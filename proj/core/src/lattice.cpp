#include "peridyn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

// Bonds whose length matches the radius up to rounding are admitted.
constexpr double kRadiusSlack = 1e-10;

double orient(const Vec3& a, const Vec3& b, const Vec3& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// Parameter of c along p->q, assuming collinearity.
double along(const Vec3& p, const Vec3& q, const Vec3& c) {
  const Vec3 d = q - p;
  return dot(c - p, d) / dot(d, d);
}

}  // namespace

std::size_t BondHealth::broken_count() const {
  return static_cast<std::size_t>(std::count(intact_.begin(), intact_.end(), std::uint8_t{0}));
}

Lattice build_uniform_grid(const DomainSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2) {
    throw ParameterError("at least two nodes per axis are required");
  }
  const double lx = spec.upper.x - spec.lower.x;
  const double ly = spec.upper.y - spec.lower.y;
  if (!(lx > 0.0) || !(ly > 0.0)) throw ParameterError("degenerate domain extent");
  if (!(spec.thickness > 0.0)) throw ParameterError("thickness must be positive");

  Lattice lat;
  lat.nx = spec.nx;
  lat.ny = spec.ny;
  lat.dx = lx / static_cast<double>(spec.nx);
  lat.dy = ly / static_cast<double>(spec.ny);
  lat.thickness = spec.thickness;
  lat.lower = spec.lower;
  lat.upper = spec.upper;
  lat.cracks = spec.cracks;

  const std::size_t n = spec.nx * spec.ny;
  lat.positions.reserve(n);
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      lat.positions.push_back({spec.lower.x + (static_cast<double>(ix) + 0.5) * lat.dx,
                               spec.lower.y + (static_cast<double>(iy) + 0.5) * lat.dy, 0.0});
    }
  }
  lat.volumes.assign(n, lat.dx * lat.dy * spec.thickness);

  for (const auto& c : spec.cracks) {
    auto inside = [&](const Vec3& p) {
      return p.x >= spec.lower.x && p.x <= spec.upper.x && p.y >= spec.lower.y &&
             p.y <= spec.upper.y;
    };
    if (!inside(c.a) || !inside(c.b)) throw ParameterError("crack segment leaves the domain");
  }
  return lat;
}

double volume_correction_factor(double xi_norm, double delta, double h_grid,
                                CorrectionMethod method) {
  auto ramp = [&] { return std::clamp((delta - xi_norm) / h_grid + 0.5, 0.0, 1.0); };
  switch (method) {
    case CorrectionMethod::none:
    case CorrectionMethod::fa:
      return xi_norm <= delta ? 1.0 : 0.0;
    case CorrectionMethod::lammps:
      if (xi_norm <= delta - 0.5 * h_grid) return 1.0;
      if (xi_norm <= delta) return ramp();
      return 0.0;
    case CorrectionMethod::qwj:
      if (xi_norm <= delta - 0.5 * h_grid) return 1.0;
      if (xi_norm <= delta + 0.5 * h_grid) return ramp();
      return 0.0;
  }
  return 0.0;
}

Lattice build_neighbor_list(Lattice lat, double radius, NeighborMode mode,
                            CorrectionMethod method) {
  if (!(radius > 0.0)) throw ParameterError("neighbor radius must be positive");
  const double h_grid = lat.dx;
  lat.mode = mode;
  lat.correction = mode == NeighborMode::gk_truncation ? CorrectionMethod::none : method;
  lat.radius = radius;
  double search = radius;
  if (mode == NeighborMode::bounded_horizon && method == CorrectionMethod::qwj) {
    search = radius + 0.5 * h_grid;
  }
  lat.interaction_radius = search;
  const double slack = kRadiusSlack * search;

  // Integer stencil of the uniform grid, binned by cell. Offsets are exact
  // multiples of the spacing, so xi is translation-invariant and antisymmetric.
  const auto reach_x = static_cast<long>(std::floor((search + slack) / lat.dx));
  const auto reach_y = static_cast<long>(std::floor((search + slack) / lat.dy));
  struct Offset {
    long px, py;
    Vec3 xi;
    double lambda;
  };
  std::vector<Offset> stencil;
  for (long py = -reach_y; py <= reach_y; ++py) {
    for (long px = -reach_x; px <= reach_x; ++px) {
      if (px == 0 && py == 0) continue;
      const Vec3 xi{static_cast<double>(px) * lat.dx, static_cast<double>(py) * lat.dy, 0.0};
      const double len = norm(xi);
      if (len > search + slack) continue;
      double lambda = 1.0;
      if (mode == NeighborMode::bounded_horizon) {
        // Snap lengths within rounding of a branch point onto the inside.
        lambda = volume_correction_factor(std::max(0.0, len - slack), radius, h_grid, method);
        if (!(lambda > 0.0)) continue;
      }
      stencil.push_back({px, py, xi, lambda});
    }
  }

  const std::size_t n = lat.node_count();
  lat.offsets.assign(n + 1, 0);
  lat.neighbors.clear();
  lat.xi.clear();
  lat.lambda.clear();
  lat.empty_neighborhoods = 0;
  const long nx = static_cast<long>(lat.nx);
  const long ny = static_cast<long>(lat.ny);

  // Stencil is generated in row-major offset order, so visiting it in order
  // yields neighbor indices sorted ascending.
  for (long iy = 0; iy < ny; ++iy) {
    for (long ix = 0; ix < nx; ++ix) {
      const std::size_t i = static_cast<std::size_t>(iy * nx + ix);
      for (const auto& o : stencil) {
        const long jx = ix + o.px;
        const long jy = iy + o.py;
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
        lat.neighbors.push_back(static_cast<std::uint32_t>(jy * nx + jx));
        lat.xi.push_back(o.xi);
        lat.lambda.push_back(o.lambda);
      }
      lat.offsets[i + 1] = lat.neighbors.size();
      if (lat.offsets[i + 1] == lat.offsets[i]) ++lat.empty_neighborhoods;
    }
  }

  lat.reverse.assign(lat.neighbors.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = lat.offsets[i]; b < lat.offsets[i + 1]; ++b) {
      const std::size_t j = lat.neighbors[b];
      const auto first = lat.neighbors.begin() + static_cast<std::ptrdiff_t>(lat.offsets[j]);
      const auto last = lat.neighbors.begin() + static_cast<std::ptrdiff_t>(lat.offsets[j + 1]);
      const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(i));
      lat.reverse[b] = static_cast<std::uint32_t>(it - lat.neighbors.begin());
    }
  }
  return lat;
}

bool bond_crosses(const Vec3& p, const Vec3& q, const Segment& crack) {
  const int o1 = sign(orient(crack.a, crack.b, p));
  const int o2 = sign(orient(crack.a, crack.b, q));
  const int o3 = sign(orient(p, q, crack.a));
  const int o4 = sign(orient(p, q, crack.b));

  if (o1 == 0 && o2 == 0) {
    // Collinear: crossing iff the closed crack interval meets the open bond interval.
    const double ta = along(p, q, crack.a);
    const double tb = along(p, q, crack.b);
    const double lo = std::min(ta, tb);
    const double hi = std::max(ta, tb);
    return hi > 0.0 && lo < 1.0;
  }
  // An endpoint of the bond on the crack line is not a crossing of the open bond.
  if (o1 == 0 || o2 == 0) return false;
  if (o1 == o2) return false;
  // Passing through a crack tip counts as crossing.
  return o3 * o4 <= 0;
}

std::size_t sever_bonds_crossing(const Lattice& lattice, BondHealth& health,
                                 const Segment& crack) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < lattice.node_count(); ++i) {
    for (std::size_t b = lattice.offsets[i]; b < lattice.offsets[i + 1]; ++b) {
      const std::size_t j = lattice.neighbors[b];
      if (j < i) continue;
      if (bond_crosses(lattice.positions[i], lattice.positions[j], crack)) {
        count += health.sever(b) ? 1 : 0;
        count += health.sever(lattice.reverse[b]) ? 1 : 0;
      }
    }
  }
  return count;
}

BondHealth initial_bond_health(const Lattice& lattice) {
  BondHealth health(lattice.bond_count());
  for (const auto& c : lattice.cracks) sever_bonds_crossing(lattice, health, c);
  return health;
}

}  // namespace peridyn
