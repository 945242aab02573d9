#pragma once

#include <stdexcept>

#include "splitproj/linalg.hpp"

namespace splitproj {

/// Spectral norm estimate from power iteration on AᵀA.
struct NormEstimate {
  /// Power-iteration value. It is a Rayleigh quotient, so it never exceeds ‖A‖₂.
  double estimate = 0.0;
  /// estimate·(1 + tol). Used wherever an upper bound on ‖A‖₂ is required,
  /// e.g. the step bound μ ≤ 1/‖A‖².
  double certified = 0.0;
  int iterations = 0;
  double tol = 0.0;
};

class NormNotConvergedError : public std::runtime_error {
 public:
  NormNotConvergedError(double last_estimate, int iterations);
  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Power iteration on AᵀA started from the normalised all-ones vector.
///
/// Iteration stops when the eigen-residual ‖AᵀAv − θv‖ of the unit iterate v
/// drops to tol·θ, where θ = ‖Av‖² is the Rayleigh quotient; the relative error
/// of √θ is then about tol/2 or smaller.
NormEstimate operator_norm(const Matrix& a, double tol = 1e-10,
                           int max_iter = 100000);

}  // namespace splitproj
