#pragma once

// Two instances on which PM fails when a convergence hypothesis is dropped.
//
// Rotation: f = F = x₁y₂ − x₂y₁ on C = Q = R², A = I. The unique solution is
// the origin but f is not paramonotone; every PM step multiplies ‖x‖² by
// a² + b² > 1 with a = 1 − μαγ, b = μγ + α.
//
// Empty solution set: C = {(t, 0) : t ≥ 1}, Q = {(t, s) : t ≥ 1, s ≥ 1/√t},
// A = I, indicator bifunctions, μ = 1/2. C ∩ Q is empty and the first
// coordinate of the iterates increases without bound.

#include <cstddef>
#include <string>
#include <vector>

#include "splitproj/schedule.hpp"
#include "splitproj/trace.hpp"

namespace splitproj {

enum class Verdict { kPass, kFail, kNotApplicable };

std::string to_string(Verdict v);

/// x_{n+1} = (a x₁ + b x₂, −b x₁ + a x₂), a = 1 − μαγ, b = μγ + α.
Vector rotation_closed_form_step(const Vector& x, double mu, double gamma, double alpha);

struct RotationStepCheck {
  double norm_sq_before = 0.0;
  double norm_sq_after = 0.0;
  /// a² + b², computed from a and b directly.
  double growth = 0.0;
  /// 1 + μ²α²γ² + μ²γ² + α²
  double growth_expanded = 0.0;
  /// max-norm gap between PM and the closed-form recursion after this step.
  double route_gap = 0.0;
};

struct RotationReport {
  IterateTrace trace;
  std::vector<RotationStepCheck> steps;
  double max_route_gap = 0.0;
  bool strictly_increasing = false;
  bool growth_above_one = false;
  Verdict verdict = Verdict::kNotApplicable;
};

/// Runs PM on the rotation instance and, independently, the closed-form
/// recursion (its own γ, α computed from ‖x‖ and ‖z‖). PASS iff both routes
/// agree to 1e-10 (relative to max(1, ‖x‖)), ‖x_{n+1}‖ > ‖x_n‖ and
/// a² + b² > 1 at every step. x0 = 0 is the solution: NOT-APPLICABLE.
RotationReport rotation_counterexample_run(const Vector& x0, const ParamSchedule& sched,
                                           std::size_t n_steps);

/// Default schedule for the rotation run: β_n = 1/(n+1)^0.7, ρ = 1, μ = 1.
ParamSchedule rotation_default_schedule();

struct EmptySolutionStepCheck {
  double x1 = 0.0;
  double u1 = 0.0;
  double x1_next = 0.0;
  bool u_bound = false;     // u₁ > x₁ + 1/(4x₁²)
  bool step_bound = false;  // x₁' > x₁ + 1/(8x₁²)
};

struct EmptySolutionReport {
  IterateTrace trace;
  std::vector<EmptySolutionStepCheck> steps;
  bool all_bounds_hold = false;
  bool norm_strictly_increasing = false;
  bool doubled = false;  // final x₁ ≥ 2·x₁₀
  Verdict verdict = Verdict::kFail;
};

/// Runs PM from (x10, 0), x10 ≥ 1, with μ = 1/2, β_n = 1/(n+1)^0.7, ρ = 1.
/// PASS iff both per-step bounds hold strictly at every step (no tolerance)
/// and ‖x_n‖ strictly increases. `doubled` is reported separately.
EmptySolutionReport empty_solution_counterexample_run(double x10, std::size_t n_steps);

}  // namespace splitproj
