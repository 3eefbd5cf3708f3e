#include "peridyn/writers.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

void append(std::string& out, const char* fmt, auto... args) {
  char buf[128];
  const int n = std::snprintf(buf, sizeof buf, fmt, args...);
  out.append(buf, static_cast<std::size_t>(n));
}

void append_vectors(std::string& out, std::span<const Vec3> v) {
  for (const Vec3& p : v) append(out, "%.8e %.8e %.8e\n", p.x, p.y, p.z);
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string format_convergence_csv(const ConvergenceReport& report) {
  std::string out = "N,dx,l2_error,rate\n";
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    const auto& l = report.levels[k];
    append(out, "%zu,%.5e,%.5e,", l.n, l.dx, l.l2_error);
    if (k > 0) append(out, "%.6f", report.rates[k - 1]);
    out += '\n';
  }
  return out;
}

void write_convergence_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  write_text_file(path, format_convergence_csv(report));
}

void write_profile_csv(std::span<const ProfilePoint> profile, const std::filesystem::path& path) {
  std::string out = "x,numeric,exact\n";
  for (const auto& p : profile) append(out, "%.8e,%.8e,%.8e\n", p.x, p.numeric, p.exact);
  write_text_file(path, out);
}

std::string format_vtk_snapshot(const Lattice& lattice, std::span<const Vec3> displacement,
                                std::span<const double> damage, std::span<const Vec3> velocity) {
  const std::size_t n = lattice.node_count();
  if (displacement.size() != n || damage.size() != n || velocity.size() != n) {
    throw ParameterError("snapshot arrays are not aligned with the lattice");
  }
  std::string out;
  out.reserve(n * 130 + 256);
  out += "# vtk DataFile Version 3.0\nperidyn snapshot\nASCII\nDATASET POLYDATA\n";
  append(out, "POINTS %zu float\n", n);
  append_vectors(out, lattice.positions);
  append(out, "VERTICES %zu %zu\n", n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) append(out, "1 %zu\n", i);
  append(out, "POINT_DATA %zu\n", n);
  out += "VECTORS displacement float\n";
  append_vectors(out, displacement);
  out += "SCALARS damage float 1\nLOOKUP_TABLE default\n";
  for (double d : damage) append(out, "%.8e\n", d);
  out += "VECTORS velocity float\n";
  append_vectors(out, velocity);
  return out;
}

void write_vtk_snapshot(const Lattice& lattice, std::span<const Vec3> displacement,
                        std::span<const double> damage, std::span<const Vec3> velocity,
                        const std::filesystem::path& path) {
  write_text_file(path, format_vtk_snapshot(lattice, displacement, damage, velocity));
}

}  // namespace peridyn
