// splitproj: generate instances, run and compare solvers, replay the
// counterexamples and run the invariant suite.
//
// Exit codes: 0 success / PASS, 1 invariant violation or FAIL,
// 2 refusal (incompatible instance, bad input, I/O error).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "splitproj/counterexamples.hpp"
#include "splitproj/harness.hpp"
#include "splitproj/selfcheck.hpp"

using namespace splitproj;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitRefused = 2;

struct InstanceFlags {
  CLI::Option* seed = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* variant = nullptr;
  CLI::Option* n_f = nullptr;
  CLI::Option* n_big_f = nullptr;
  CLI::Option* instance = nullptr;
  std::uint64_t seed_v = 1;
  std::size_t m_v = 30, k_v = 20, n_f_v = 1, n_big_f_v = 1;
  std::string variant_v = "general";
  std::string instance_v;

  void add(CLI::App* app, bool with_file) {
    seed = app->add_option("--seed", seed_v, "instance seed");
    m = app->add_option("--m", m_v, "dimension of C");
    k = app->add_option("--k", k_v, "dimension of Q");
    variant = app->add_option("--variant", variant_v, "general | resolvent_friendly | scep");
    n_f = app->add_option("--n-f", n_f_v, "number of f components (scep variant)");
    n_big_f = app->add_option("--n-F", n_big_f_v, "number of F components (scep variant)");
    if (with_file) instance = app->add_option("--instance", instance_v, "instance JSON file");
  }

  void apply(RunConfig& c) const {
    if (*seed) c.spec.seed = seed_v;
    if (*m) c.spec.m = m_v;
    if (*k) c.spec.k = k_v;
    if (*variant) c.spec.variant = parse_variant(variant_v);
    if (*n_f) c.spec.n_f = n_f_v;
    if (*n_big_f) c.spec.n_big_f = n_big_f_v;
    if (instance && *instance) c.instance_file = instance_v;
    c.spec.validate();
  }
};

struct RunFlags {
  CLI::Option* algo = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* rho = nullptr;
  CLI::Option* mu_scale = nullptr;
  CLI::Option* r = nullptr;
  CLI::Option* max_iter = nullptr;
  CLI::Option* d_tol = nullptr;
  CLI::Option* residual_tol = nullptr;
  std::string algo_v = "pm";
  double beta_v = 0.7, rho_v = 1.0, mu_scale_v = 1.0, r_v = 1.0;
  std::size_t max_iter_v = 400;
  double d_tol_v = 0.0, residual_tol_v = 0.0;
  bool no_timing = false;
  bool no_invariant_check = false;

  void add(CLI::App* app, bool with_algo) {
    if (with_algo) algo = app->add_option("--algo", algo_v, "pm | pspm | ppsm | scep");
    beta = app->add_option("--beta-exponent", beta_v, "s in beta_n = 1/(n+1)^s");
    rho = app->add_option("--rho", rho_v, "constant rho_n");
    mu_scale = app->add_option("--mu-scale", mu_scale_v, "mu_n = scale/|A|^2");
    r = app->add_option("--r", r_v, "pspm resolvent parameter");
    max_iter = app->add_option("--max-iter", max_iter_v, "iteration budget");
    d_tol = app->add_option("--d-tol", d_tol_v, "stop once D_n <= d-tol");
    residual_tol = app->add_option("--residual-tol", residual_tol_v,
                                   "stop once both residuals <= tol (not a certificate)");
    app->add_flag("--no-timing", no_timing, "leave elapsed_ms empty (byte-exact CSV)");
    app->add_flag("--no-invariant-check", no_invariant_check,
                  "report Fejer violations without failing the exit code");
  }

  void apply(RunConfig& c) const {
    if (algo && *algo) c.algorithm = parse_algorithm(algo_v);
    if (*beta) c.beta_exponent = beta_v;
    if (*rho) c.rho = rho_v;
    if (*mu_scale) c.mu_scale = mu_scale_v;
    if (*r) c.resolvent_r = r_v;
    if (*max_iter) c.stop.max_iter = max_iter_v;
    if (*d_tol) c.stop.d_tol = d_tol_v;
    if (*residual_tol) c.stop.residual_tol = residual_tol_v;
    if (no_timing) c.timing = false;
    if (no_invariant_check) c.check_invariants = false;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_warnings(const SummaryReport& s) {
  if (!s.schedule_certified)
    std::cerr << "warning: schedule " << s.schedule << " carries no convergence certificate\n";
  for (const auto& w : s.schedule_warnings) std::cerr << "warning: " << w << '\n';
}

int do_generate(const InstanceFlags& inst, const std::string& out) {
  RunConfig c;
  inst.apply(c);
  const GeneratedInstance g = generate_instance(c.spec);
  if (out.empty() || out == "-") {
    std::cout << instance_to_json(g).dump(1) << '\n';
  } else {
    save_instance(g, out);
    std::cerr << "wrote " << out << '\n';
  }
  return 0;
}

int do_run(RunConfig c, const std::string& out, const std::string& summary_path) {
  const bool csv_to_stdout = out.empty() || out == "-";
  if (!csv_to_stdout) c.csv_out = out;
  if (!summary_path.empty()) c.summary_out = summary_path;
  const RunResult res = cmd_run(c);
  if (csv_to_stdout) write_trace_csv(std::cout, res.trace, c.timing);
  if (summary_path.empty())
    (csv_to_stdout ? std::cerr : std::cout) << res.summary.to_json().dump(2) << '\n';
  print_warnings(res.summary);
  if (c.check_invariants && res.summary.invariant_violations > 0) {
    std::cerr << "invariant violation: " << res.summary.invariant_violations
              << " Fejer violation(s) above tolerance\n";
    return kExitViolation;
  }
  return 0;
}

int do_compare(const std::vector<RunConfig>& configs, double threshold, const std::string& out,
               const std::string& summary_path) {
  const CompareResult res = cmd_compare(configs, threshold);
  if (out.empty() || out == "-")
    std::cout << res.csv;
  else
    write_text(out, res.csv);
  const std::string summary = res.summary().dump(2) + "\n";
  if (!summary_path.empty())
    write_text(summary_path, summary);
  else
    ((out.empty() || out == "-") ? std::cerr : std::cout) << summary;

  int rc = 0;
  for (std::size_t i = 0; i < res.entries.size(); ++i) {
    const CompareEntry& e = res.entries[i];
    std::cerr << e.label << ": ";
    if (e.iterations_to_threshold)
      std::cerr << "D <= " << threshold << " at n = " << *e.iterations_to_threshold;
    else
      std::cerr << "threshold not reached in " << e.result.summary.iterations << " iterations";
    std::cerr << " (rank " << e.rank_by_iterations << ")\n";
    if (configs[i].check_invariants && e.result.summary.invariant_violations > 0)
      rc = kExitViolation;
  }
  return rc;
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(std::stod(item));
  return out;
}

int do_counterexample(const std::string& name, std::size_t steps, const std::string& x0,
                      const std::string& out) {
  if (steps == 0) throw std::invalid_argument("--steps must be at least 1");
  std::ostringstream csv;
  Verdict verdict;
  std::string extra;
  if (name == "rotation") {
    const std::vector<double> p = parse_point(x0.empty() ? "1,0" : x0);
    if (p.size() != 2) throw std::invalid_argument("--x0 needs two coordinates for rotation");
    const RotationReport r =
        rotation_counterexample_run(Vector{p[0], p[1]}, rotation_default_schedule(), steps);
    csv << "n,x1,x2,norm_sq,norm_sq_next,growth,route_gap\n";
    for (std::size_t n = 0; n < r.steps.size(); ++n) {
      const auto& s = r.steps[n];
      const Vector& x = *r.trace.rows[n].x;
      csv << n << ',' << format_double(x[0]) << ',' << format_double(x[1]) << ','
          << format_double(s.norm_sq_before) << ',' << format_double(s.norm_sq_after) << ','
          << format_double(s.growth) << ',' << format_double(s.route_gap) << '\n';
    }
    verdict = r.verdict;
  } else if (name == "empty_solution") {
    const std::vector<double> p = parse_point(x0.empty() ? "1" : x0);
    if (p.size() != 1) throw std::invalid_argument("--x0 needs one coordinate for empty_solution");
    const EmptySolutionReport r = empty_solution_counterexample_run(p[0], steps);
    csv << "n,x1,u1,x1_next,u_bound,step_bound\n";
    for (std::size_t n = 0; n < r.steps.size(); ++n) {
      const auto& s = r.steps[n];
      csv << n << ',' << format_double(s.x1) << ',' << format_double(s.u1) << ','
          << format_double(s.x1_next) << ',' << int(s.u_bound) << ',' << int(s.step_bound) << '\n';
    }
    verdict = r.verdict;
    extra = std::string(" doubled=") + (r.doubled ? "yes" : "no");
  } else {
    throw std::invalid_argument("unknown counterexample '" + name +
                                "' (expected rotation or empty_solution)");
  }
  if (out.empty() || out == "-")
    std::cout << csv.str();
  else
    write_text(out, csv.str());
  std::cerr << "verdict: " << to_string(verdict) << extra << '\n';
  return verdict == Verdict::kFail ? kExitViolation : 0;
}

int do_selfcheck() {
  int failed = 0;
  for (const CheckResult& r : run_selfcheck()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"split equilibrium solvers: projection method and baselines"};
  app.require_subcommand(1);

  std::string out, summary, config_path;

  auto* gen = app.add_subcommand("generate", "write a seeded random instance as JSON");
  InstanceFlags gen_inst;
  gen_inst.add(gen, false);
  gen->add_option("--out", out, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "run one algorithm, emit CSV trace and JSON summary");
  InstanceFlags run_inst;
  RunFlags run_flags;
  run_inst.add(run, true);
  run_flags.add(run, true);
  run->add_option("--config", config_path, "JSON run config; flags override it");
  run->add_option("--out", out, "CSV trace file (default stdout)");
  run->add_option("--summary", summary, "JSON summary file");

  auto* cmp = app.add_subcommand("compare", "run several algorithms on one instance");
  InstanceFlags cmp_inst;
  RunFlags cmp_flags;
  std::string algos = "pm,pspm";
  std::vector<std::string> cmp_configs;
  double threshold = 1e-2;
  cmp_inst.add(cmp, true);
  cmp_flags.add(cmp, false);
  cmp->add_option("--algos", algos, "comma-separated algorithms")->capture_default_str();
  cmp->add_option("--config", cmp_configs, "JSON run configs, one per run (replaces --algos)");
  cmp->add_option("--threshold", threshold, "D threshold for ranking")->capture_default_str();
  cmp->add_option("--out", out, "combined CSV file (default stdout)");
  cmp->add_option("--summary", summary, "JSON summary file");

  auto* cex = app.add_subcommand("counterexample", "replay a counterexample and print a verdict");
  std::string cex_name, x0;
  std::size_t steps = 0;
  cex->add_option("name", cex_name, "rotation | empty_solution")->required();
  auto* steps_opt = cex->add_option("--steps", steps, "steps (default 500 / 1000)");
  cex->add_option("--x0", x0, "start point, e.g. 1,0 (rotation) or 1 (empty_solution)");
  cex->add_option("--out", out, "CSV file (default stdout)");

  auto* self = app.add_subcommand("selfcheck", "run the invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return do_generate(gen_inst, out);
    if (*run) {
      RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
      run_inst.apply(c);
      run_flags.apply(c);
      return do_run(c, out, summary);
    }
    if (*cmp) {
      std::vector<RunConfig> configs;
      if (!cmp_configs.empty()) {
        for (const auto& p : cmp_configs) {
          RunConfig c = load_config(p);
          cmp_flags.apply(c);
          configs.push_back(c);
        }
      } else {
        RunConfig base;
        cmp_inst.apply(base);
        cmp_flags.apply(base);
        for (const auto& a : split_list(algos)) {
          RunConfig c = base;
          c.algorithm = parse_algorithm(a);
          configs.push_back(c);
        }
      }
      return do_compare(configs, threshold, out, summary);
    }
    if (*cex) {
      if (!*steps_opt) steps = cex_name == "empty_solution" ? 1000 : 500;
      return do_counterexample(cex_name, steps, x0, out);
    }
    if (*self) return do_selfcheck();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRefused;
  }
  return 0;
}
