#include "splitproj/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "splitproj/operator_norm.hpp"
#include "splitproj/qp.hpp"

namespace splitproj {

NumericError::NumericError(std::string stage)
    : std::runtime_error("non-finite value at stage '" + stage + "'"),
      stage_(std::move(stage)) {}

namespace {

constexpr double kMembershipTol = 1e-10;

const Vector& finite(const Vector& v, const char* stage) {
  if (!v.all_finite()) throw NumericError(stage);
  return v;
}

double finite(double v, const char* stage) {
  if (!std::isfinite(v)) throw NumericError(stage);
  return v;
}

void require_in_c(const FeasibleSet& c, const Vector& x) {
  require_same_size(x.size(), c.dim(), "iterate");
  if (!c.contains(x, kMembershipTol))
    throw std::invalid_argument("iterate is not in C (" + c.describe() + ")");
}

/// The schedule's norm bound must dominate the largest column norm of A, a
/// lower bound on ‖A‖₂ that costs one pass over A.
void require_norm_covers(const Matrix& a, const ParamSchedule& sched) {
  double largest = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) sq += a(i, j) * a(i, j);
    largest = std::max(largest, sq);
  }
  if (std::sqrt(largest) > sched.operator_norm())
    throw ScheduleError("schedule: norm bound " + std::to_string(sched.operator_norm()) +
                        " is below |A| >= " + std::to_string(std::sqrt(largest)));
}

/// β / max{ρ, ‖v‖}
double step_size(double beta, double rho, const Vector& v) {
  return beta / std::max(rho, norm(v));
}

/// z = P_C(x + μAᵀ(y − Ax))
Vector split_correction(const SepInstance& inst, const Vector& x, const Vector& ax,
                        const Vector& y, double mu) {
  return inst.c->project(axpy(x, mu, inst.a.apply_transpose(y - ax)));
}

void fill_solution_fields(TraceRow& row, const std::optional<Vector>& solution,
                          const Vector& x, const Vector& x_next, const ParamSchedule& sched,
                          std::size_t n) {
  if (!solution) return;
  const double d = squared_norm(x - *solution);
  const double d_next = squared_norm(x_next - *solution);
  row.d = d;
  row.fejer_violation =
      std::max(0.0, d_next - d - (1.0 + sched.mu(n)) * sched.delta(n));
}

TraceRow base_row(std::size_t n, const ParamSchedule& sched) {
  TraceRow row;
  row.n = n;
  row.delta = sched.delta(n);
  row.mu = sched.mu(n);
  return row;
}

using Stepper = std::function<StepResult(const Vector&, std::size_t)>;

IterateTrace run_loop(std::string algorithm, const FeasibleSet& c, const Matrix& a,
                      const std::optional<Vector>& solution, const Vector& x0,
                      const ParamSchedule& sched, const StopRule& stop,
                      const RunOptions& options, const Stepper& step) {
  if (stop.max_iter == 0) throw std::invalid_argument("stop rule: max_iter must be >= 1");
  if (stop.d_tol && !solution)
    throw std::invalid_argument("stop rule: d_tol requires a known solution");
  require_in_c(c, x0);
  if (a.max_abs() > 0.0 && operator_norm(a).estimate > sched.operator_norm())
    throw ScheduleError("schedule: norm bound is below the power-iteration estimate of |A|");

  IterateTrace trace;
  trace.algorithm = std::move(algorithm);
  trace.schedule = sched.descriptor();
  trace.schedule_certified = sched.certified();
  trace.initial_x = x0;
  trace.rows.reserve(stop.max_iter);

  const auto start = std::chrono::steady_clock::now();
  Vector x = x0;
  for (std::size_t n = 0; n < stop.max_iter; ++n) {
    StepResult r = step(x, n);
    r.row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (options.store_iterates) r.row.x = x;
    const double residual = std::max(r.row.residual_split, r.row.residual_step);
    trace.rows.push_back(std::move(r.row));
    x = std::move(r.x_next);

    if (stop.d_tol && squared_norm(x - *solution) <= *stop.d_tol) break;
    if (stop.residual_tol && residual <= *stop.residual_tol) break;
  }
  trace.final_x = x;
  if (solution) trace.final_d = squared_norm(x - *solution);
  return trace;
}

}  // namespace

PmStepResult pm_step(const SepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched) {
  require_in_c(*inst.c, x);
  sched.validate_at(n);
  require_norm_covers(inst.a, sched);
  if (!(sched.mu_upper() <= 1.0 / (sched.operator_norm() * sched.operator_norm())))
    throw ScheduleError("schedule: C3 bound exceeds 1/|A|^2");

  const double beta = sched.beta(n), rho = sched.rho(n), eps = sched.eps(n),
               mu = sched.mu(n);

  PmStepResult out;
  PmStepDetail& s = out.detail;
  s.ax = finite(inst.a.apply(x), "Ax");
  s.u = finite(inst.q->project(s.ax), "u=P_Q(Ax)");
  s.w = finite(diagonal_subgradient(*inst.big_f, s.u, eps), "w");
  const double gamma = finite(step_size(beta, rho, s.w), "gamma");
  s.y = finite(inst.q->project(axpy(s.u, -gamma, s.w)), "y");
  s.z = finite(split_correction(inst, x, s.ax, s.y, mu), "z");
  s.g = finite(diagonal_subgradient(*inst.f, s.z, eps), "g");
  const double alpha = finite(step_size(beta, rho, s.g), "alpha");
  out.x_next = finite(inst.c->project(axpy(s.z, -alpha, s.g)), "x_next");

  TraceRow& row = out.row;
  row = base_row(n, sched);
  row.residual_split = norm(s.u - s.ax);
  row.residual_step = norm(out.x_next - s.z);
  row.gamma = gamma;
  row.alpha = alpha;
  fill_solution_fields(row, inst.known_solution, x, out.x_next, sched, n);
  if (inst.known_solution) row.f_at_solution = inst.f->value(s.z, *inst.known_solution);
  return out;
}

IterateTrace run_pm(const SepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                    const StopRule& stop, const RunOptions& options) {
  inst.validate();
  return run_loop("pm", *inst.c, inst.a, inst.known_solution, x0, sched, stop, options,
                  [&](const Vector& x, std::size_t n) {
                    PmStepResult r = pm_step(inst, x, n, sched);
                    return StepResult{std::move(r.x_next), std::move(r.row)};
                  });
}

StepResult pspm_step(const SepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched, double r, double resolvent_tol) {
  const auto* big_f = dynamic_cast<const QuadraticBifunction*>(inst.big_f.get());
  const auto* q_box = dynamic_cast<const BoxSet*>(inst.q.get());
  if (big_f == nullptr || q_box == nullptr ||
      !(big_f->x_coefficient() == big_f->y_coefficient())) {
    throw IncompatibleInstanceError(
        "pspm: needs a box Q and a quadratic F with equal coefficient matrices "
        "(resolvent-friendly instance)");
  }
  if (!(r > 0.0)) throw std::invalid_argument("pspm: resolvent parameter must be > 0");
  require_in_c(*inst.c, x);
  sched.validate_at(n);
  require_norm_covers(inst.a, sched);
  const double norm_a = sched.operator_norm();
  if (!(sched.mu(n) < 2.0 / (norm_a * norm_a)))
    throw ScheduleError("pspm: requires mu_n < 2/|A|^2");

  const double beta = sched.beta(n), rho = sched.rho(n), eps = sched.eps(n),
               mu = sched.mu(n);

  const Vector w = finite(diagonal_subgradient(*inst.f, x, eps), "w");
  const double alpha = finite(step_size(beta, rho, w), "alpha");
  const Vector y = finite(inst.c->project(axpy(x, -alpha, w)), "y");
  const Vector ay = inst.a.apply(y);
  const Vector t = finite(solve_resolvent(*big_f, r, ay, *q_box, resolvent_tol), "T_r(Ay)");
  StepResult out;
  out.x_next =
      finite(inst.c->project(axpy(y, -mu, inst.a.apply_transpose(ay - t))), "x_next");

  const Vector ax = inst.a.apply(x);
  TraceRow& row = out.row;
  row = base_row(n, sched);
  row.residual_split = norm(inst.q->project(ax) - ax);
  row.residual_step = norm(out.x_next - y);
  row.alpha = alpha;
  fill_solution_fields(row, inst.known_solution, x, out.x_next, sched, n);
  if (inst.known_solution) row.f_at_solution = inst.f->value(y, *inst.known_solution);
  return out;
}

IterateTrace run_pspm(const SepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, double r, const RunOptions& options) {
  inst.validate();
  return run_loop("pspm", *inst.c, inst.a, inst.known_solution, x0, sched, stop, options,
                  [&](const Vector& x, std::size_t n) {
                    return pspm_step(inst, x, n, sched, r);
                  });
}

namespace {

struct RangeStage {
  Vector ax;
  Vector u;
  std::vector<Vector> w;
};

RangeStage range_stage(const ScepInstance& inst, const Vector& x, double eps) {
  RangeStage s;
  s.ax = finite(inst.a.apply(x), "Ax");
  s.u = finite(inst.q->project(s.ax), "u=P_Q(Ax)");
  s.w.reserve(inst.big_f_list.size());
  for (const auto& fj : inst.big_f_list)
    s.w.push_back(finite(diagonal_subgradient(*fj, s.u, eps), "w_j"));
  return s;
}

/// Σ c_k v_k, accumulated from the first term so a single unit weight
/// reproduces v_0 bit for bit.
Vector weighted_sum(const std::vector<Vector>& vs, const std::vector<double>& coeff) {
  Vector acc = coeff[0] * vs[0];
  for (std::size_t k = 1; k < vs.size(); ++k) acc = axpy(acc, coeff[k], vs[k]);
  return acc;
}

Vector mean(const std::vector<Vector>& vs) {
  Vector acc = vs[0];
  for (std::size_t k = 1; k < vs.size(); ++k) acc += vs[k];
  return (1.0 / static_cast<double>(vs.size())) * std::move(acc);
}

double max_f_at_solution(const ScepInstance& inst, const Vector& z) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& fi : inst.f_list) best = std::max(best, fi->value(z, *inst.known_solution));
  return best;
}

void check_pm_bound(const ParamSchedule& sched) {
  if (!(sched.mu_upper() <= 1.0 / (sched.operator_norm() * sched.operator_norm())))
    throw ScheduleError("schedule: C3 bound exceeds 1/|A|^2");
}

}  // namespace

StepResult ppsm_step(const ScepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched) {
  require_in_c(*inst.c, x);
  sched.validate_at(n);
  require_norm_covers(inst.a, sched);
  check_pm_bound(sched);
  const double beta = sched.beta(n), rho = sched.rho(n), eps = sched.eps(n),
               mu = sched.mu(n);

  const RangeStage s = range_stage(inst, x, eps);
  double w_scale = rho;
  for (const Vector& wj : s.w) w_scale = std::max(w_scale, norm(wj));
  const double gamma = finite(beta / w_scale, "gamma");
  std::vector<Vector> ys;
  ys.reserve(s.w.size());
  for (const Vector& wj : s.w) ys.push_back(inst.q->project(axpy(s.u, -gamma, wj)));
  const Vector y = finite(mean(ys), "y");

  const Vector z = finite(
      inst.c->project(axpy(x, mu, inst.a.apply_transpose(y - s.ax))), "z");
  std::vector<Vector> gs;
  gs.reserve(inst.f_list.size());
  for (const auto& fi : inst.f_list) gs.push_back(finite(diagonal_subgradient(*fi, z, eps), "g_i"));
  double g_scale = rho;
  for (const Vector& gi : gs) g_scale = std::max(g_scale, norm(gi));
  const double alpha = finite(beta / g_scale, "alpha");
  std::vector<Vector> xs;
  xs.reserve(gs.size());
  for (const Vector& gi : gs) xs.push_back(inst.c->project(axpy(z, -alpha, gi)));

  StepResult out;
  out.x_next = finite(mean(xs), "x_next");
  TraceRow& row = out.row;
  row = base_row(n, sched);
  row.residual_split = norm(s.u - s.ax);
  row.residual_step = norm(out.x_next - z);
  row.gamma = gamma;
  row.alpha = alpha;
  fill_solution_fields(row, inst.known_solution, x, out.x_next, sched, n);
  if (inst.known_solution) row.f_at_solution = max_f_at_solution(inst, z);
  return out;
}

IterateTrace run_ppsm(const ScepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, const RunOptions& options) {
  inst.validate();
  return run_loop("ppsm", *inst.c, inst.a, inst.known_solution, x0, sched, stop, options,
                  [&](const Vector& x, std::size_t n) { return ppsm_step(inst, x, n, sched); });
}

ScepWeights ScepWeights::uniform(std::size_t n_f, std::size_t n_big_f) {
  return ScepWeights{std::vector<double>(n_big_f, 1.0 / static_cast<double>(n_big_f)),
                     std::vector<double>(n_f, 1.0 / static_cast<double>(n_f))};
}

void ScepWeights::validate(std::size_t n_f, std::size_t n_big_f) const {
  auto check = [](const std::vector<double>& ws, std::size_t count, const char* name) {
    if (ws.size() != count)
      throw std::invalid_argument(std::string("scep weights: ") + name +
                                  " has wrong length");
    double sum = 0.0;
    for (double w : ws) {
      if (!(w > 0.0 && w <= 1.0))
        throw std::invalid_argument(std::string("scep weights: ") + name +
                                    " entries must lie in (0, 1]");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument(std::string("scep weights: ") + name + " must sum to 1");
  };
  check(theta, n_big_f, "theta");
  check(tau, n_f, "tau");
}

StepResult scep_step(const ScepInstance& inst, const Vector& x, std::size_t n,
                     const ParamSchedule& sched, const ScepWeights& weights) {
  weights.validate(inst.f_list.size(), inst.big_f_list.size());
  require_in_c(*inst.c, x);
  sched.validate_at(n);
  require_norm_covers(inst.a, sched);
  check_pm_bound(sched);
  const double beta = sched.beta(n), rho = sched.rho(n), eps = sched.eps(n),
               mu = sched.mu(n);

  const RangeStage s = range_stage(inst, x, eps);
  double gamma_max = 0.0;
  std::vector<Vector> ys;
  ys.reserve(s.w.size());
  for (const Vector& wj : s.w) {
    const double gamma_j = finite(step_size(beta, rho, wj), "gamma_j");
    gamma_max = std::max(gamma_max, gamma_j);
    ys.push_back(inst.q->project(axpy(s.u, -gamma_j, wj)));
  }
  const Vector y = finite(weighted_sum(ys, weights.theta), "y");

  const Vector z = finite(
      inst.c->project(axpy(x, mu, inst.a.apply_transpose(y - s.ax))), "z");
  double alpha_max = 0.0;
  std::vector<Vector> xs;
  xs.reserve(inst.f_list.size());
  for (const auto& fi : inst.f_list) {
    const Vector gi = finite(diagonal_subgradient(*fi, z, eps), "g_i");
    const double alpha_i = finite(step_size(beta, rho, gi), "alpha_i");
    alpha_max = std::max(alpha_max, alpha_i);
    xs.push_back(inst.c->project(axpy(z, -alpha_i, gi)));
  }

  StepResult out;
  out.x_next = finite(weighted_sum(xs, weights.tau), "x_next");
  TraceRow& row = out.row;
  row = base_row(n, sched);
  row.residual_split = norm(s.u - s.ax);
  row.residual_step = norm(out.x_next - z);
  row.gamma = gamma_max;
  row.alpha = alpha_max;
  fill_solution_fields(row, inst.known_solution, x, out.x_next, sched, n);
  if (inst.known_solution) row.f_at_solution = max_f_at_solution(inst, z);
  return out;
}

IterateTrace run_scep(const ScepInstance& inst, const Vector& x0, const ParamSchedule& sched,
                      const StopRule& stop, const ScepWeights& weights,
                      const RunOptions& options) {
  inst.validate();
  weights.validate(inst.f_list.size(), inst.big_f_list.size());
  return run_loop("scep", *inst.c, inst.a, inst.known_solution, x0, sched, stop, options,
                  [&](const Vector& x, std::size_t n) {
                    return scep_step(inst, x, n, sched, weights);
                  });
}

}  // namespace splitproj
