#include "splitproj/counterexamples.hpp"

#include <algorithm>
#include <cmath>

#include "splitproj/algorithms.hpp"
#include "splitproj/generators.hpp"

namespace splitproj {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kNotApplicable:
      return "NOT-APPLICABLE";
  }
  return "UNKNOWN";
}

Vector rotation_closed_form_step(const Vector& x, double mu, double gamma, double alpha) {
  require_same_size(x.size(), 2, "rotation_closed_form_step");
  const double a = 1.0 - mu * alpha * gamma;
  const double b = mu * gamma + alpha;
  return Vector{a * x[0] + b * x[1], -b * x[0] + a * x[1]};
}

ParamSchedule rotation_default_schedule() {
  return ParamSchedule::power_beta(0.7, 1.0);
}

RotationReport rotation_counterexample_run(const Vector& x0, const ParamSchedule& sched,
                                           std::size_t n_steps) {
  require_same_size(x0.size(), 2, "rotation_counterexample_run");
  RotationReport report;
  const SepInstance inst = make_rotation_instance();
  report.trace = run_pm(inst, x0, sched, StopRule{n_steps, std::nullopt, std::nullopt},
                        RunOptions{true});

  // Independent route: closed-form recursion with its own step sizes.
  Vector x = x0;
  report.strictly_increasing = true;
  report.growth_above_one = true;
  for (std::size_t n = 0; n < report.trace.rows.size(); ++n) {
    const double beta = sched.beta(n), rho = sched.rho(n), mu = sched.mu(n);
    const double gamma = beta / std::max(rho, norm(x));  // ‖w‖ = ‖u‖ = ‖x‖
    const Vector z{x[0] + mu * gamma * x[1], x[1] - mu * gamma * x[0]};
    const double alpha = beta / std::max(rho, norm(z));  // ‖g‖ = ‖z‖
    const Vector next = rotation_closed_form_step(x, mu, gamma, alpha);

    RotationStepCheck check;
    const double a = 1.0 - mu * alpha * gamma;
    const double b = mu * gamma + alpha;
    check.growth = a * a + b * b;
    check.growth_expanded = 1.0 + mu * mu * alpha * alpha * gamma * gamma +
                            mu * mu * gamma * gamma + alpha * alpha;

    const Vector& pm_before = *report.trace.rows[n].x;
    const Vector& pm_after = n + 1 < report.trace.rows.size()
                                 ? *report.trace.rows[n + 1].x
                                 : report.trace.final_x;
    check.norm_sq_before = squared_norm(pm_before);
    check.norm_sq_after = squared_norm(pm_after);
    check.route_gap = max_abs(pm_after - next) / std::max(1.0, max_abs(next));

    report.max_route_gap = std::max(report.max_route_gap, check.route_gap);
    report.strictly_increasing =
        report.strictly_increasing && check.norm_sq_after > check.norm_sq_before;
    report.growth_above_one = report.growth_above_one && check.growth > 1.0;
    report.steps.push_back(check);
    x = next;
  }

  if (norm(x0) == 0.0) {
    report.verdict = Verdict::kNotApplicable;
  } else {
    report.verdict = report.strictly_increasing && report.growth_above_one &&
                             report.max_route_gap <= 1e-10
                         ? Verdict::kPass
                         : Verdict::kFail;
  }
  return report;
}

EmptySolutionReport empty_solution_counterexample_run(double x10, std::size_t n_steps) {
  if (!(x10 >= 1.0))
    throw std::invalid_argument("empty_solution_counterexample_run: requires x10 >= 1");
  EmptySolutionReport report;
  const SepInstance inst = make_empty_solution_instance();
  const ParamSchedule sched = ParamSchedule::power_beta_fixed_mu(0.7, 1.0, 0.5);

  report.trace.algorithm = "pm";
  report.trace.schedule = sched.descriptor();
  report.trace.schedule_certified = sched.certified();
  report.trace.initial_x = Vector{x10, 0.0};

  Vector x = report.trace.initial_x;
  report.all_bounds_hold = true;
  report.norm_strictly_increasing = true;
  for (std::size_t n = 0; n < n_steps; ++n) {
    PmStepResult step = pm_step(inst, x, n, sched);
    step.row.x = x;

    EmptySolutionStepCheck check;
    check.x1 = x[0];
    check.u1 = step.detail.u[0];
    check.x1_next = step.x_next[0];
    check.u_bound = check.u1 > check.x1 + 1.0 / (4.0 * check.x1 * check.x1);
    check.step_bound = check.x1_next > check.x1 + 1.0 / (8.0 * check.x1 * check.x1);
    report.all_bounds_hold = report.all_bounds_hold && check.u_bound && check.step_bound;
    report.norm_strictly_increasing =
        report.norm_strictly_increasing && norm(step.x_next) > norm(x);
    report.steps.push_back(check);

    report.trace.rows.push_back(std::move(step.row));
    x = std::move(step.x_next);
  }
  report.trace.final_x = x;
  report.doubled = x[0] >= 2.0 * x10;
  report.verdict = report.all_bounds_hold && report.norm_strictly_increasing
                       ? Verdict::kPass
                       : Verdict::kFail;
  return report;
}

}  // namespace splitproj
