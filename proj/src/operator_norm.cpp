#include "splitproj/operator_norm.hpp"

#include <cmath>
#include <string>

namespace splitproj {

NormNotConvergedError::NormNotConvergedError(double last_estimate, int iterations)
    : std::runtime_error("operator_norm: power iteration did not converge after " +
                         std::to_string(iterations) +
                         " iterations (last estimate " +
                         std::to_string(last_estimate) + ")"),
      last_estimate_(last_estimate) {}

namespace {

// Returns false when the start vector lies in the null space of A.
bool power_iterate(const Matrix& a, Vector v, double tol, int max_iter,
                   NormEstimate& out) {
  v *= 1.0 / norm(v);
  double theta = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Vector av = a.apply(v);
    theta = squared_norm(av);
    if (theta == 0.0) return false;
    const Vector bv = a.apply_transpose(av);
    const double residual = norm(axpy(bv, -theta, v));
    out.estimate = std::sqrt(theta);
    out.iterations = it;
    if (residual <= tol * theta) return true;
    v = bv * (1.0 / norm(bv));
  }
  throw NormNotConvergedError(std::sqrt(theta), max_iter);
}

}  // namespace

NormEstimate operator_norm(const Matrix& a, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("operator_norm: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("operator_norm: max_iter must be >= 1");
  if (a.max_abs() == 0.0) throw std::invalid_argument("operator_norm: zero matrix");

  NormEstimate out;
  out.tol = tol;
  bool ok = power_iterate(a, Vector(a.cols(), 1.0), tol, max_iter, out);
  // All-ones can be annihilated by A; fall back to coordinate directions.
  for (std::size_t j = 0; !ok && j < a.cols(); ++j) {
    Vector e(a.cols());
    e[j] = 1.0;
    ok = power_iterate(a, e, tol, max_iter, out);
  }
  out.certified = out.estimate * (1.0 + tol);
  return out;
}

}  // namespace splitproj
