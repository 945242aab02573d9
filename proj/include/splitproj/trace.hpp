#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "splitproj/linalg.hpp"

namespace splitproj {

/// Absolute tolerance on the per-step Fejér inequality
/// ‖x_{n+1} − x*‖² ≤ ‖x_n − x*‖² + (1 + μ_n)δ_n.
inline constexpr double kFejerTolerance = 1e-9;

/// One iteration n → n+1.
struct TraceRow {
  std::size_t n = 0;
  /// x_n, only kept when iterate storage is requested.
  std::optional<Vector> x;
  /// D_n = ‖x_n − x*‖², when x* is known.
  std::optional<double> d;
  /// ‖P_Q(Ax_n) − Ax_n‖
  double residual_split = 0.0;
  /// ‖x_{n+1} − z_n‖ (PSPM: ‖x_{n+1} − y_n‖)
  double residual_step = 0.0;
  /// Range-space step size; absent for PSPM, which has none.
  std::optional<double> gamma;
  double alpha = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  /// max(0, D_{n+1} − D_n − (1 + μ_n)δ_n), when x* is known.
  std::optional<double> fejer_violation;
  /// f(z_n, x*) (largest over components), when x* is known. Diagnostic only:
  /// its lim sup tends to 0 on convergent runs.
  std::optional<double> f_at_solution;
  /// Wall clock since the start of the run, measured after the step.
  double elapsed_ms = 0.0;
};

struct IterateTrace {
  std::string algorithm;
  std::string schedule;
  bool schedule_certified = false;
  std::vector<TraceRow> rows;
  Vector initial_x;
  Vector final_x;
  /// D at final_x, when x* is known.
  std::optional<double> final_d;

  std::size_t iterations() const { return rows.size(); }
  /// Rows whose Fejér violation exceeds kFejerTolerance.
  std::size_t fejer_violations() const;
};

/// The decay proxy for ‖u_n − Ax_n‖ → 0 and ‖x_{n+1} − z_n‖ → 0: the largest
/// value over the last 10% of the series is at most 10× the series' first
/// decile (10th percentile), plus `floor` to absorb exact zeros.
bool decile_decay(const std::vector<double>& series, double floor = 1e-12);

}  // namespace splitproj
