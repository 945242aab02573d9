#include "splitproj/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace splitproj {

QpNotConvergedError::QpNotConvergedError(double residual, int iterations)
    : std::runtime_error("solve_box_qp: no convergence after " +
                         std::to_string(iterations) + " iterations (residual " +
                         std::to_string(residual) + ")"),
      residual_(residual) {}

BoxQpResult solve_box_qp(const Matrix& m, const Vector& linear, const BoxSet& box,
                         double tol, int max_iter) {
  if (!m.is_square()) throw DimensionError("solve_box_qp: M must be square");
  require_same_size(m.rows(), linear.size(), "solve_box_qp linear term");
  require_same_size(m.rows(), box.dim(), "solve_box_qp box");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_box_qp: tol must be > 0");

  const Matrix hessian = m + m.transpose();
  const std::vector<double> eig = symmetric_eigenvalues(hessian);
  const double spectral = std::max(std::abs(eig.front()), std::abs(eig.back()));
  if (eig.front() < -1e-8 * std::max(1.0, spectral)) {
    throw NonconvexQpError("solve_box_qp: objective is not convex (min eigenvalue " +
                           std::to_string(eig.front()) + ")");
  }

  BoxQpResult out;
  out.lipschitz = spectral + 1.0;
  const double step = 1.0 / out.lipschitz;

  auto gradient = [&](const Vector& v) {
    Vector g = hessian.apply(v);
    g += linear;
    return g;
  };
  auto residual_at = [&](const Vector& v) {
    return norm(v - project_box(axpy(v, -step, gradient(v)), box));
  };

  Vector x = project_box(Vector(linear.size()), box);
  out.residual = residual_at(x);
  if (out.residual <= tol) {
    out.solution = std::move(x);
    return out;
  }

  Vector y = x;
  double t = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vector x_next = project_box(axpy(y, -step, gradient(y)), box);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const Vector delta = x_next - x;
    if (dot(y - x_next, delta) > 0.0) {
      // Momentum points uphill; restart from the current iterate.
      t = 1.0;
      y = x_next;
    } else {
      y = axpy(x_next, (t - 1.0) / t_next, delta);
      t = t_next;
    }
    x = std::move(x_next);

    out.residual = residual_at(x);
    out.iterations = it;
    if (out.residual <= tol) {
      out.solution = std::move(x);
      return out;
    }
  }
  throw QpNotConvergedError(out.residual, max_iter);
}

Vector solve_resolvent(const QuadraticBifunction& f, double r, const Vector& u,
                       const BoxSet& q, double tol) {
  if (!(r > 0.0)) throw std::invalid_argument("solve_resolvent: r must be > 0");
  const Matrix& m = f.x_coefficient();
  if (!(m == f.y_coefficient())) {
    throw std::invalid_argument(
        "solve_resolvent: requires equal coefficient matrices (P == R)");
  }
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("solve_resolvent: coefficient matrix not symmetric");
  require_same_size(u.size(), f.dim(), "solve_resolvent u");
  require_same_size(q.dim(), f.dim(), "solve_resolvent Q");

  // ⟨Mv,v⟩ + ⟨c,v⟩ + (1/r)‖v − u‖² = ⟨(M + I/r)v, v⟩ + ⟨c − (2/r)u, v⟩ + const
  Matrix shifted = m;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += 1.0 / r;
  Vector linear = axpy(f.offset(), -2.0 / r, u);
  return solve_box_qp(shifted, linear, q, tol).solution;
}

double resolvent_inequality_margin(const Bifunction& f, double r, const Vector& u,
                                   const Vector& z, std::span<const Vector> samples) {
  double margin = std::numeric_limits<double>::infinity();
  const Vector z_minus_u = z - u;
  for (const Vector& y : samples) {
    const double v = f.value(z, y) + dot(y - z, z_minus_u) / r;
    margin = std::min(margin, v);
  }
  return margin;
}

}  // namespace splitproj
