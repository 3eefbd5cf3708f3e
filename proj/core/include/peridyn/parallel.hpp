#pragma once

#include <span>

#include "peridyn/vec.hpp"

namespace peridyn {

/// Applies the PERIDYN_THREADS cap (if set) to the worker pool and returns the
/// number of workers in use. Without OpenMP this is always 1.
int configure_threads();

/// Sum of a_i . b_i. Partial sums over fixed-size blocks are combined in block
/// order, so the result is identical for any worker count.
double deterministic_dot(std::span<const Vec3> a, std::span<const Vec3> b);

}  // namespace peridyn
