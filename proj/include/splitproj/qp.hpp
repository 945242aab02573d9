#pragma once

// Box-constrained convex quadratic programs and the proximal resolvent of
// quadratic bifunctions with equal coefficient matrices.

#include <span>
#include <stdexcept>

#include "splitproj/bifunctions.hpp"
#include "splitproj/linalg.hpp"
#include "splitproj/sets.hpp"

namespace splitproj {

class NonconvexQpError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QpNotConvergedError : public std::runtime_error {
 public:
  QpNotConvergedError(double residual, int iterations);
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct BoxQpResult {
  Vector solution;
  /// ‖v − P_B(v − ∇φ(v)/L)‖ at the returned point.
  double residual = 0.0;
  int iterations = 0;
  /// Step constant L = ‖M + Mᵀ‖₂ + 1.
  double lipschitz = 0.0;
};

/// Minimises φ(v) = ⟨Mv, v⟩ + ⟨linear, v⟩ over the box.
///
/// Accelerated projected gradient with fixed step 1/L and gradient-based
/// restart. Stops when the projected-gradient fixed-point residual is at most
/// tol. Throws NonconvexQpError when M + Mᵀ has an eigenvalue below
/// −1e-8·max(1, ‖M + Mᵀ‖₂) and QpNotConvergedError after max_iter iterations.
BoxQpResult solve_box_qp(const Matrix& m, const Vector& linear, const BoxSet& box,
                         double tol, int max_iter = 200000);

/// Resolvent of F(x, y) = ⟨Mx + My + c, y − x⟩ (M symmetric PSD) on a box:
///
///   argmin { ⟨Mv, v⟩ + ⟨c, v⟩ + (1/r)‖v − u‖² : v ∈ Q }.
///
/// With the (1/r)‖v − u‖² weight this point is characterised by
/// F(z, y) + (2/r)⟨y − z, z − u⟩ ≥ 0 for all y ∈ Q, which is the resolvent
/// inequality at parameter r/2 (see resolvent_inequality_margin).
/// Throws std::invalid_argument unless P == R exactly and M is symmetric.
Vector solve_resolvent(const QuadraticBifunction& f, double r, const Vector& u,
                       const BoxSet& q, double tol);

/// min over the sample points y of F(z, y) + (1/r)⟨y − z, z − u⟩.
/// Non-negative for every y ∈ Q iff z is the resolvent of F at parameter r.
double resolvent_inequality_margin(const Bifunction& f, double r, const Vector& u,
                                   const Vector& z, std::span<const Vector> samples);

}  // namespace splitproj
