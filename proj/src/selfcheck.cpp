#include "splitproj/selfcheck.hpp"

#include <functional>
#include <sstream>

#include "splitproj/counterexamples.hpp"
#include "splitproj/harness.hpp"
#include "splitproj/qp.hpp"

namespace splitproj {

namespace {

using Check = std::function<std::string(bool&)>;

std::string fejer_suite(bool& ok) {
  std::size_t runs = 0, violations = 0;
  for (const auto& [m, k] : {std::pair<std::size_t, std::size_t>{5, 3}, {10, 6}}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      for (double s : {0.51, 0.7, 1.0}) {
        RunConfig c;
        c.spec.m = m;
        c.spec.k = k;
        c.spec.seed = seed;
        c.beta_exponent = s;
        c.stop.max_iter = 200;
        c.timing = false;
        violations += execute_run(resolve_instance(c), c).summary.invariant_violations;
        ++runs;
      }
    }
  }
  ok = violations == 0;
  return std::to_string(runs) + " runs, " + std::to_string(violations) + " violations";
}

std::string instance_construction(bool& ok) {
  ok = true;
  for (Variant v : {Variant::kGeneral, Variant::kResolventFriendly}) {
    InstanceSpec spec;
    spec.m = 6;
    spec.k = 4;
    spec.variant = v;
    ok = ok && verify_instance(generate_instance(spec), 7, 200).ok;
  }
  return ok ? "general and resolvent_friendly verified" : "construction check failed";
}

std::string rotation(bool& ok) {
  const RotationReport r =
      rotation_counterexample_run(Vector{1.0, 0.0}, rotation_default_schedule(), 200);
  ok = r.verdict == Verdict::kPass;
  return to_string(r.verdict);
}

std::string empty_solution(bool& ok) {
  const EmptySolutionReport r = empty_solution_counterexample_run(1.0, 200);
  ok = r.verdict == Verdict::kPass;
  return to_string(r.verdict);
}

std::string single_component_equivalence(bool& ok) {
  RunConfig c;
  c.spec.m = 8;
  c.spec.k = 5;
  c.stop.max_iter = 50;
  c.timing = false;
  const GeneratedInstance inst = resolve_instance(c);
  const Vector pm = execute_run(inst, c).trace.final_x;
  c.algorithm = Algorithm::kPpsm;
  const Vector ppsm = execute_run(inst, c).trace.final_x;
  c.algorithm = Algorithm::kScep;
  const Vector scep = execute_run(inst, c).trace.final_x;
  ok = bitwise_equal(pm, ppsm) && bitwise_equal(pm, scep);
  return ok ? "ppsm and scep match pm bitwise" : "iterates differ";
}

std::string resolvent_closed_form(bool& ok) {
  const Matrix id = Matrix::identity(2);
  const QuadraticBifunction f(id, id, Vector(2, 0.0));
  const Vector z = solve_resolvent(f, 1.0, Vector{2.0, 2.0}, BoxSet::cube(2, -10.0, 10.0), 1e-12);
  const double err = max_abs(z - Vector{1.0, 1.0});
  ok = err <= 1e-6;
  std::ostringstream os;
  os << "max error " << err;
  return os.str();
}

std::string determinism(bool& ok) {
  RunConfig c;
  c.spec.m = 6;
  c.spec.k = 4;
  c.stop.max_iter = 60;
  c.timing = false;
  ok = trace_csv(cmd_run(c).trace, false) == trace_csv(cmd_run(c).trace, false);
  return ok ? "identical CSV" : "CSV differs";
}

std::string pspm_refusal(bool& ok) {
  RunConfig c;
  c.spec.m = 4;
  c.spec.k = 3;
  c.algorithm = Algorithm::kPspm;
  ok = false;
  try {
    check_compatibility(resolve_instance(c), c.algorithm);
  } catch (const IncompatibleInstanceError&) {
    ok = true;
  }
  return ok ? "refused on general variant" : "accepted general variant";
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  const std::vector<std::pair<std::string, Check>> checks = {
      {"fejer_monotonicity", fejer_suite},
      {"instance_construction", instance_construction},
      {"rotation_counterexample", rotation},
      {"empty_solution_counterexample", empty_solution},
      {"single_component_equivalence", single_component_equivalence},
      {"resolvent_closed_form", resolvent_closed_form},
      {"determinism", determinism},
      {"pspm_refusal", pspm_refusal},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = fn(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace splitproj
