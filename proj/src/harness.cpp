#include "splitproj/harness.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <sstream>

#include "splitproj/operator_norm.hpp"

namespace splitproj {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPm:
      return "pm";
    case Algorithm::kPspm:
      return "pspm";
    case Algorithm::kPpsm:
      return "ppsm";
    case Algorithm::kScep:
      return "scep";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "pm") return Algorithm::kPm;
  if (name == "pspm") return Algorithm::kPspm;
  if (name == "ppsm") return Algorithm::kPpsm;
  if (name == "scep") return Algorithm::kScep;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from(const json& j, const std::string& key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number()) throw SchemaError("field 'config." + key + "' must be a number");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  return optional_from(j, key).value_or(fallback);
}

bool bool_or(const json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw SchemaError("field 'config." + key + "' must be a boolean");
  return j[key].get<bool>();
}

std::optional<std::filesystem::path> path_from(const json& j, const std::string& key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw SchemaError("field 'config." + key + "' must be a string");
  return std::filesystem::path(j[key].get<std::string>());
}

json path_to(const std::optional<std::filesystem::path>& p) {
  return p ? json(p->string()) : json(nullptr);
}

}  // namespace

json config_to_json(const RunConfig& c) {
  return json{{"instance", spec_to_json(c.spec)},
              {"instance_file", path_to(c.instance_file)},
              {"algorithm", to_string(c.algorithm)},
              {"beta_exponent", c.beta_exponent},
              {"rho", c.rho},
              {"mu_scale", c.mu_scale},
              {"resolvent_r", c.resolvent_r},
              {"max_iter", c.stop.max_iter},
              {"d_tol", optional_number(c.stop.d_tol)},
              {"residual_tol", optional_number(c.stop.residual_tol)},
              {"timing", c.timing},
              {"check_invariants", c.check_invariants},
              {"csv_out", path_to(c.csv_out)},
              {"summary_out", path_to(c.summary_out)}};
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("config: expected an object");
  RunConfig c;
  if (j.contains("instance")) c.spec = spec_from_json(j["instance"]);
  c.instance_file = path_from(j, "instance_file");
  if (j.contains("algorithm")) {
    if (!j["algorithm"].is_string())
      throw SchemaError("field 'config.algorithm' must be a string");
    try {
      c.algorithm = parse_algorithm(j["algorithm"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("field 'config.algorithm': ") + e.what());
    }
  }
  c.beta_exponent = number_or(j, "beta_exponent", c.beta_exponent);
  c.rho = number_or(j, "rho", c.rho);
  c.mu_scale = number_or(j, "mu_scale", c.mu_scale);
  c.resolvent_r = number_or(j, "resolvent_r", c.resolvent_r);
  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_unsigned() || j["max_iter"].get<std::size_t>() == 0)
      throw SchemaError("field 'config.max_iter' must be a positive integer");
    c.stop.max_iter = j["max_iter"].get<std::size_t>();
  }
  c.stop.d_tol = optional_from(j, "d_tol");
  c.stop.residual_tol = optional_from(j, "residual_tol");
  c.timing = bool_or(j, "timing", c.timing);
  c.check_invariants = bool_or(j, "check_invariants", c.check_invariants);
  c.csv_out = path_from(j, "csv_out");
  c.summary_out = path_from(j, "summary_out");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return config_from_json(json::parse(is));
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

json SummaryReport::to_json() const {
  return json{{"algorithm", algorithm},
              {"iterations", iterations},
              {"initial_D", optional_number(initial_d)},
              {"final_D", optional_number(final_d)},
              {"final_residual_split", final_residual_split},
              {"final_residual_step", final_residual_step},
              {"wall_ms", optional_number(wall_ms)},
              {"invariant_violations", invariant_violations},
              {"schedule", schedule},
              {"schedule_certified", schedule_certified},
              {"schedule_warnings", schedule_warnings},
              {"seed", seed},
              {"variant", variant},
              {"operator_norm", operator_norm}};
}

GeneratedInstance resolve_instance(const RunConfig& config) {
  if (config.instance_file) return load_instance(*config.instance_file);
  return generate_instance(config.spec);
}

void check_compatibility(const GeneratedInstance& inst, Algorithm algorithm) {
  const bool single = inst.f.size() == 1 && inst.big_f.size() == 1;
  switch (algorithm) {
    case Algorithm::kPm:
      if (!single)
        throw IncompatibleInstanceError(
            "pm needs a single-component instance; use ppsm or scep");
      break;
    case Algorithm::kPspm:
      if (!single)
        throw IncompatibleInstanceError("pspm needs a single-component instance");
      if (!(inst.big_f[0].x_coefficient() == inst.big_f[0].y_coefficient()))
        throw IncompatibleInstanceError(
            "pspm refuses the '" + to_string(inst.spec.variant) +
            "' variant: its resolvent step needs F with equal coefficient matrices "
            "(generate with --variant resolvent_friendly)");
      break;
    case Algorithm::kPpsm:
    case Algorithm::kScep:
      break;
  }
}

ParamSchedule harness_schedule(const GeneratedInstance& inst, const RunConfig& config) {
  const NormEstimate norm_a = operator_norm(inst.a);
  return ParamSchedule::power_beta(config.beta_exponent, norm_a.certified, config.rho,
                                   config.mu_scale);
}

RunResult execute_run(const GeneratedInstance& inst, const RunConfig& config) {
  check_compatibility(inst, config.algorithm);
  const ParamSchedule sched = harness_schedule(inst, config);
  const Vector x0 = project_box(Vector(inst.spec.m, 1.0), inst.c);

  RunResult out;
  switch (config.algorithm) {
    case Algorithm::kPm:
      out.trace = run_pm(inst.sep(), x0, sched, config.stop);
      break;
    case Algorithm::kPspm:
      out.trace = run_pspm(inst.sep(), x0, sched, config.stop, config.resolvent_r);
      break;
    case Algorithm::kPpsm:
      out.trace = run_ppsm(inst.scep(), x0, sched, config.stop);
      break;
    case Algorithm::kScep: {
      const ScepWeights weights = ScepWeights::uniform(inst.f.size(), inst.big_f.size());
      out.trace = run_scep(inst.scep(), x0, sched, config.stop, weights);
      break;
    }
  }

  SummaryReport& s = out.summary;
  s.algorithm = out.trace.algorithm;
  s.iterations = out.trace.iterations();
  if (!out.trace.rows.empty()) {
    s.initial_d = out.trace.rows.front().d;
    s.final_residual_split = out.trace.rows.back().residual_split;
    s.final_residual_step = out.trace.rows.back().residual_step;
    if (config.timing) s.wall_ms = out.trace.rows.back().elapsed_ms;
  }
  s.final_d = out.trace.final_d;
  s.invariant_violations = out.trace.fejer_violations();
  s.schedule = sched.descriptor();
  s.schedule_certified = sched.certified();
  s.schedule_warnings = sched.series_warnings();
  s.seed = inst.spec.seed;
  s.variant = to_string(inst.spec.variant);
  s.operator_norm = sched.operator_norm();
  return out;
}

RunResult cmd_run(const RunConfig& config) {
  const GeneratedInstance inst = resolve_instance(config);
  RunResult result = execute_run(inst, config);
  if (config.csv_out) {
    std::ofstream os(*config.csv_out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + config.csv_out->string() + "'");
    write_trace_csv(os, result.trace, config.timing);
  }
  if (config.summary_out) {
    std::ofstream os(*config.summary_out);
    if (!os) throw std::runtime_error("cannot open '" + config.summary_out->string() + "'");
    os << result.summary.to_json().dump(2) << '\n';
  }
  return result;
}

namespace {

/// D_0, …, D_final for a run with a known solution.
std::vector<double> d_series(const IterateTrace& trace) {
  std::vector<double> d;
  d.reserve(trace.rows.size() + 1);
  for (const TraceRow& r : trace.rows) d.push_back(r.d.value());
  d.push_back(trace.final_d.value());
  return d;
}

bool same_source(const RunConfig& a, const RunConfig& b) {
  if (a.instance_file || b.instance_file) return a.instance_file == b.instance_file;
  return a.spec == b.spec;
}

}  // namespace

json CompareResult::summary() const {
  json runs = json::array();
  for (const CompareEntry& e : entries) {
    json s = e.result.summary.to_json();
    s["label"] = e.label;
    s["iterations_to_threshold"] =
        e.iterations_to_threshold ? json(*e.iterations_to_threshold) : json(nullptr);
    s["time_to_threshold_ms"] = optional_number(e.time_to_threshold_ms);
    s["rank_by_iterations"] = e.rank_by_iterations;
    s["rank_by_time"] = e.rank_by_time ? json(*e.rank_by_time) : json(nullptr);
    runs.push_back(std::move(s));
  }
  return json{{"threshold", threshold}, {"runs", std::move(runs)}};
}

CompareResult cmd_compare(const std::vector<RunConfig>& configs, double threshold) {
  if (configs.empty()) throw std::invalid_argument("compare: no configurations given");
  if (!(threshold > 0.0)) throw std::invalid_argument("compare: threshold must be > 0");

  const GeneratedInstance inst = resolve_instance(configs.front());
  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (!same_source(configs.front(), configs[i]) && !(resolve_instance(configs[i]) == inst)) {
      throw IncompatibleInstanceError(
          "compare: configuration " + std::to_string(i) +
          " refers to a different instance than configuration 0");
    }
  }
  for (const RunConfig& c : configs) check_compatibility(inst, c.algorithm);

  std::vector<std::future<RunResult>> futures;
  futures.reserve(configs.size());
  for (const RunConfig& c : configs)
    futures.push_back(std::async(std::launch::async, [&inst, &c] { return execute_run(inst, c); }));

  CompareResult out;
  out.threshold = threshold;
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    CompareEntry e;
    e.result = futures[i].get();
    const std::string name = to_string(configs[i].algorithm);
    const int count = seen[name]++;
    e.label = count == 0 ? name : name + "#" + std::to_string(count + 1);

    const std::vector<double> d = d_series(e.result.trace);
    for (std::size_t n = 0; n < d.size(); ++n) {
      if (d[n] <= threshold) {
        e.iterations_to_threshold = n;
        if (configs[i].timing)
          e.time_to_threshold_ms = n == 0 ? 0.0 : e.result.trace.rows[n - 1].elapsed_ms;
        break;
      }
    }
    out.entries.push_back(std::move(e));
  }

  // Unreached thresholds rank last; ties keep configuration order.
  std::vector<std::size_t> order(out.entries.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t i) {
    const auto& it = out.entries[i].iterations_to_threshold;
    return it ? *it : std::numeric_limits<std::size_t>::max();
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t r = 0; r < order.size(); ++r) out.entries[order[r]].rank_by_iterations = r + 1;

  std::vector<std::size_t> timed;
  for (std::size_t i = 0; i < out.entries.size(); ++i)
    if (out.entries[i].time_to_threshold_ms) timed.push_back(i);
  std::stable_sort(timed.begin(), timed.end(), [&](std::size_t a, std::size_t b) {
    return *out.entries[a].time_to_threshold_ms < *out.entries[b].time_to_threshold_ms;
  });
  for (std::size_t r = 0; r < timed.size(); ++r) out.entries[timed[r]].rank_by_time = r + 1;

  std::ostringstream csv;
  csv << "n";
  std::size_t longest = 0;
  std::vector<std::vector<double>> columns;
  for (const CompareEntry& e : out.entries) {
    csv << ",D_" << e.label;
    columns.push_back(d_series(e.result.trace));
    longest = std::max(longest, columns.back().size());
  }
  csv << '\n';
  for (std::size_t n = 0; n < longest; ++n) {
    csv << n;
    for (const auto& col : columns) {
      csv << ',';
      if (n < col.size()) csv << format_double(col[n]);
    }
    csv << '\n';
  }
  out.csv = csv.str();
  return out;
}

}  // namespace splitproj
