#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "peridyn/force.hpp"
#include "peridyn/lattice.hpp"
#include "peridyn/scenarios.hpp"

namespace peridyn {

/// Header "N,dx,l2_error,rate". dx and l2_error as %.5e, rate as %.6f and
/// empty on the first row. LF line endings. Throws std::runtime_error if the
/// file cannot be written.
std::string format_convergence_csv(const ConvergenceReport& report);
void write_convergence_csv(const ConvergenceReport& report, const std::filesystem::path& path);

/// Columns "x,numeric,exact" for the crack-plate centerline profile.
void write_profile_csv(std::span<const ProfilePoint> profile, const std::filesystem::path& path);

/// Legacy VTK ASCII polydata with POINTS and point arrays "displacement",
/// "damage", "velocity". Floats use 9 significant digits.
std::string format_vtk_snapshot(const Lattice& lattice, std::span<const Vec3> displacement,
                                std::span<const double> damage, std::span<const Vec3> velocity);
void write_vtk_snapshot(const Lattice& lattice, std::span<const Vec3> displacement,
                        std::span<const double> damage, std::span<const Vec3> velocity,
                        const std::filesystem::path& path);

/// Writes `content` byte-for-byte. Throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace peridyn
