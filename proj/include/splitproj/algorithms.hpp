#pragma once

// Iterative methods for split equilibrium problems.
//
//   PM    projection method: projections and diagonal subgradients only
//   PSPM  projected subgradient-proximal baseline (needs the resolvent of F)
//   PPSM  PM for f = Σ f_i, F = Σ F_j with shared step sizes and plain averages
//   SCEP  parallel PM for common problems, per-component steps, convex weights
//
// Every step returns the next iterate together with a trace row. Runs iterate
// a step function until a StopRule fires.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "splitproj/instance.hpp"
#include "splitproj/schedule.hpp"
#include "splitproj/trace.hpp"

namespace splitproj {

/// A non-finite value appeared inside a step; `stage()` names where.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(std::string stage);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// The algorithm cannot be applied to the given instance (e.g. PSPM on an
/// instance without a computable resolvent).
class IncompatibleInstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StopRule {
  std::size_t max_iter = 400;
  /// Stop once D_n ≤ d_tol. Needs a known solution.
  std::optional<double> d_tol;
  /// Stop once max(residual_split, residual_step) ≤ residual_tol. Small
  /// residuals do not prove the iterate solves the problem.
  std::optional<double> residual_tol;
};

struct RunOptions {
  bool store_iterates = false;
};

/// Intermediate points of one PM step.
struct PmStepDetail {
  Vector ax;
  Vector u;
  Vector w;
  Vector y;
  Vector z;
  Vector g;
};

struct StepResult {
  Vector x_next;
  TraceRow row;
};

struct PmStepResult {
  Vector x_next;
  TraceRow row;
  PmStepDetail detail;
};

/// One PM iteration from x_n ∈ C:
///   u = P_Q(Ax), w ∈ ∂_ε F(u,·)(u), γ = β/max{ρ, ‖w‖}, y = P_Q(u − γw),
///   z = P_C(x + μAᵀ(y − Ax)), g ∈ ∂_ε f(z,·)(z), α = β/max{ρ, ‖g‖},
///   x_{n+1} = P_C(z − αg).
PmStepResult pm_step(const SepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched);

IterateTrace run_pm(const SepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                    const StopRule& stop, const RunOptions& options = {});

/// One PSPM iteration:
///   w ∈ ∂_ε f(x,·)(x), α = β/max{ρ, ‖w‖}, y = P_C(x − αw),
///   x_{n+1} = P_C(y − μAᵀ(Ay − T_r(Ay))),
/// with T_r the resolvent of F computed by solve_resolvent. Requires a box Q
/// and a quadratic F with equal coefficient matrices, and μ_n < 2/‖A‖².
StepResult pspm_step(const SepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched, double r, double resolvent_tol = 1e-10);

IterateTrace run_pspm(const SepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, double r = 1.0, const RunOptions& options = {});

/// One PPSM iteration for f = Σ f_i, F = Σ F_j (the components of `inst`).
/// The step sizes are shared: γ uses the largest ‖w^j‖ and α the largest
/// ‖g^i‖; y and x_{n+1} are arithmetic means of the component projections.
StepResult ppsm_step(const ScepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched);

IterateTrace run_ppsm(const ScepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, const RunOptions& options = {});

/// Convex weights θ (over the F_j) and τ (over the f_i).
struct ScepWeights {
  std::vector<double> theta;
  std::vector<double> tau;

  static ScepWeights uniform(std::size_t n_f, std::size_t n_big_f);
  /// Each weight in (0, 1], each family summing to 1 within 1e-12, sizes
  /// matching the instance.
  void validate(std::size_t n_f, std::size_t n_big_f) const;
};

/// One iteration of the parallel SCEP method: per-component
/// γ^j = β/max{ρ, ‖w^j‖} and α^i = β/max{ρ, ‖g^i‖}, y = Σ θ_j y^j,
/// x_{n+1} = Σ τ_i x^i. The row records the largest γ^j and α^i.
StepResult scep_step(const ScepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched, const ScepWeights& weights);

IterateTrace run_scep(const ScepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, const ScepWeights& weights,
                      const RunOptions& options = {});

}  // namespace splitproj
