#pragma once

// Brute-force references shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <limits>

#include "splitproj/linalg.hpp"
#include "splitproj/sets.hpp"

namespace oracle {

using splitproj::BoxSet;
using splitproj::Matrix;
using splitproj::Vector;

/// Nearest point of a box by grid search. The distance is separable, so each
/// coordinate is searched on its own grid of spacing `h` (endpoints included).
inline Vector grid_box_projection(const Vector& x, const BoxSet& box, double h) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = box.lo()[i], hi = box.hi()[i];
    const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / h));
    double best = lo, best_d = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s <= steps; ++s) {
      const double t = std::min(hi, lo + static_cast<double>(s) * h);
      const double d = (t - x[i]) * (t - x[i]);
      if (d < best_d) {
        best_d = d;
        best = t;
      }
    }
    out[i] = best;
  }
  return out;
}

/// KKT conditions of min ‖z − x‖² over a box.
inline bool box_projection_kkt(const Vector& x, const Vector& z, const BoxSet& box, double tol) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = box.lo()[i], hi = box.hi()[i];
    if (z[i] < lo - tol || z[i] > hi + tol) return false;
    const double grad = z[i] - x[i];
    if (z[i] > lo + tol && z[i] < hi - tol && std::abs(grad) > tol) return false;
    if (std::abs(z[i] - lo) <= tol && grad < -tol) return false;
    if (std::abs(z[i] - hi) <= tol && grad > tol) return false;
  }
  return true;
}

/// argmin over a 3-D box of ⟨Mv, v⟩ + ⟨c, v⟩ by nested grid refinement: a
/// 41³ grid, then repeatedly a 41³ grid on ±2 cells around the incumbent,
/// until the spacing is at most `h`.
inline Vector grid_box_qp_3d(const Matrix& m, const Vector& c, const BoxSet& box, double h) {
  auto objective = [&](const Vector& v) { return dot(m.apply(v), v) + dot(c, v); };
  Vector lo = box.lo(), hi = box.hi();
  Vector best = lo;
  constexpr int kPoints = 41;
  for (;;) {
    double best_val = std::numeric_limits<double>::infinity();
    Vector step(3);
    for (int d = 0; d < 3; ++d) step[d] = (hi[d] - lo[d]) / (kPoints - 1);
    for (int i = 0; i < kPoints; ++i)
      for (int j = 0; j < kPoints; ++j)
        for (int k = 0; k < kPoints; ++k) {
          const Vector v{lo[0] + i * step[0], lo[1] + j * step[1], lo[2] + k * step[2]};
          const double val = objective(v);
          if (val < best_val) {
            best_val = val;
            best = v;
          }
        }
    if (std::max({step[0], step[1], step[2]}) <= h) return best;
    for (int d = 0; d < 3; ++d) {
      lo[d] = std::max(box.lo()[d], best[d] - 2.0 * step[d]);
      hi[d] = std::min(box.hi()[d], best[d] + 2.0 * step[d]);
    }
  }
}

/// argmin over t ∈ [x, x + 1] of (t − x)² + 1/t on a grid of spacing h.
inline double grid_sqrt_region(double x, double h) {
  double best = x, best_val = std::numeric_limits<double>::infinity();
  const auto steps = static_cast<std::size_t>(std::round(1.0 / h));
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = x + static_cast<double>(s) * h;
    const double val = (t - x) * (t - x) + 1.0 / t;
    if (val < best_val) {
      best_val = val;
      best = t;
    }
  }
  return best;
}

}  // namespace oracle
