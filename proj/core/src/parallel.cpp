#include "peridyn/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace peridyn {

namespace {
constexpr std::size_t kBlock = 1024;
}

int configure_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("PERIDYN_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // Unparseable values leave the default pool size.
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double deterministic_dot(std::span<const Vec3> a, std::span<const Vec3> b) {
  const std::size_t n = a.size();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(blocks); ++k) {
    const std::size_t lo = static_cast<std::size_t>(k) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += dot(a[i], b[i]);
    partial[static_cast<std::size_t>(k)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace peridyn
