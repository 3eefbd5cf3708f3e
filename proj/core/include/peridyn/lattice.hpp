#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "peridyn/material.hpp"
#include "peridyn/vec.hpp"

namespace peridyn {

/// Straight crack or notch, modeled with zero width.
struct Segment {
  Vec3 a;
  Vec3 b;
};

/// Rectangular plane-stress domain partitioned into nx * ny equal cells.
struct DomainSpec {
  Vec3 lower;
  Vec3 upper;
  std::size_t nx = 2;
  std::size_t ny = 2;
  double thickness = 1.0;
  std::vector<Segment> cracks;
};

enum class NeighborMode { gk_truncation, bounded_horizon };

/// Uniform node cloud with a CSR neighbor list.
///
/// Bonds of node i occupy [offsets[i], offsets[i+1]). For every bond b = (i, j)
/// reverse[b] is the index of (j, i); xi[reverse[b]] == -xi[b] bitwise and the
/// correction factors agree.
struct Lattice {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double thickness = 1.0;
  Vec3 lower;
  Vec3 upper;
  std::vector<Vec3> positions;
  std::vector<double> volumes;
  std::vector<Segment> cracks;

  NeighborMode mode = NeighborMode::gk_truncation;
  CorrectionMethod correction = CorrectionMethod::none;
  /// Truncation radius (gk) or horizon delta (bounded).
  double radius = 0.0;
  /// Largest reference bond length admitted by the selection rule.
  double interaction_radius = 0.0;
  std::size_t empty_neighborhoods = 0;

  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> neighbors;
  std::vector<std::uint32_t> reverse;
  std::vector<Vec3> xi;
  std::vector<double> lambda;

  std::size_t node_count() const { return positions.size(); }
  std::size_t bond_count() const { return neighbors.size(); }
  std::size_t neighbor_count(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  bool has_bonds() const { return offsets.size() == positions.size() + 1; }
  /// Node index of the cell at column ix, row iy.
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
};

/// Per-bond intact flag. Bonds can only ever go from intact to broken.
class BondHealth {
 public:
  BondHealth() = default;
  explicit BondHealth(std::size_t bond_count) : intact_(bond_count, 1) {}

  bool intact(std::size_t bond) const { return intact_[bond] != 0; }
  double mu(std::size_t bond) const { return intact_[bond] ? 1.0 : 0.0; }
  /// Returns true if the bond was intact before the call.
  bool sever(std::size_t bond) {
    const bool was = intact_[bond] != 0;
    intact_[bond] = 0;
    return was;
  }
  std::size_t size() const { return intact_.size(); }
  std::size_t broken_count() const;
  std::span<const std::uint8_t> flags() const { return intact_; }

 private:
  std::vector<std::uint8_t> intact_;
};

/// Nodes at cell centers; volumes dx * dy * thickness. Neighbor list empty.
Lattice build_uniform_grid(const DomainSpec& spec);

/// Populates the neighbor list.
///
/// gk_truncation: a bond is stored iff the node-center distance is <= radius,
/// with lambda = 1. bounded_horizon: a bond is stored iff its volume-correction
/// factor is positive, and that factor is stored. Radii below the grid spacing
/// leave neighborhoods empty (counted in Lattice::empty_neighborhoods).
Lattice build_neighbor_list(Lattice lattice, double radius, NeighborMode mode,
                            CorrectionMethod method = CorrectionMethod::none);

/// Volume-correction factor in [0, 1]. h_grid is the grid spacing.
double volume_correction_factor(double xi_norm, double delta, double h_grid,
                                CorrectionMethod method);

/// True if the open bond segment (p, q) meets the closed crack segment, so a
/// bond through a crack tip is cut but one ending on the crack line is not.
bool bond_crosses(const Vec3& p, const Vec3& q, const Segment& crack);

/// Breaks every bond crossing the segment. Returns the number newly broken
/// (counting both orientations).
std::size_t sever_bonds_crossing(const Lattice& lattice, BondHealth& health,
                                 const Segment& crack);

/// All bonds intact, then every crack in the lattice severed.
BondHealth initial_bond_health(const Lattice& lattice);

}  // namespace peridyn
