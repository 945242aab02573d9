#pragma once

// Run configuration, single runs and side-by-side comparisons on one instance.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "splitproj/algorithms.hpp"
#include "splitproj/generators.hpp"
#include "splitproj/io.hpp"

namespace splitproj {

enum class Algorithm { kPm, kPspm, kPpsm, kScep };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct RunConfig {
  /// Generated from `spec` unless `instance_file` is set.
  InstanceSpec spec;
  std::optional<std::filesystem::path> instance_file;

  Algorithm algorithm = Algorithm::kPm;
  /// β_n = 1/(n+1)^s
  double beta_exponent = 0.7;
  double rho = 1.0;
  /// μ_n = mu_scale/‖A‖²
  double mu_scale = 1.0;
  /// PSPM resolvent parameter r_n.
  double resolvent_r = 1.0;
  StopRule stop;

  bool timing = true;
  bool check_invariants = true;
  std::optional<std::filesystem::path> csv_out;
  std::optional<std::filesystem::path> summary_out;
};

json config_to_json(const RunConfig& c);
/// Missing keys keep their defaults; a bad value throws SchemaError naming it.
RunConfig config_from_json(const json& j);
RunConfig load_config(const std::filesystem::path& path);

struct SummaryReport {
  std::string algorithm;
  std::size_t iterations = 0;
  std::optional<double> initial_d;
  std::optional<double> final_d;
  double final_residual_split = 0.0;
  double final_residual_step = 0.0;
  /// Absent when timing is off.
  std::optional<double> wall_ms;
  std::size_t invariant_violations = 0;
  std::string schedule;
  bool schedule_certified = false;
  std::vector<std::string> schedule_warnings;
  std::uint64_t seed = 0;
  std::string variant;
  double operator_norm = 0.0;

  json to_json() const;
};

struct RunResult {
  IterateTrace trace;
  SummaryReport summary;
};

/// Generates or loads the instance named by the config.
GeneratedInstance resolve_instance(const RunConfig& config);

/// Throws IncompatibleInstanceError when the algorithm cannot run on the
/// instance: PSPM needs a resolvent-friendly F; PM and PSPM need single
/// components.
void check_compatibility(const GeneratedInstance& inst, Algorithm algorithm);

/// The schedule the harness uses for `inst` (certified norm bound of A).
ParamSchedule harness_schedule(const GeneratedInstance& inst, const RunConfig& config);

/// Runs from x0 = (1, …, 1) ∈ C.
RunResult execute_run(const GeneratedInstance& inst, const RunConfig& config);

/// resolve_instance + execute_run, writing csv_out and summary_out when set.
RunResult cmd_run(const RunConfig& config);

struct CompareEntry {
  std::string label;
  RunResult result;
  /// First n with D_n ≤ threshold.
  std::optional<std::size_t> iterations_to_threshold;
  std::optional<double> time_to_threshold_ms;
  std::size_t rank_by_iterations = 0;
  std::optional<std::size_t> rank_by_time;
};

struct CompareResult {
  double threshold = 0.0;
  std::vector<CompareEntry> entries;
  /// n, then one D column per entry; D_0 … D_final, empty past a run's end.
  std::string csv;

  json summary() const;
};

/// Runs every config on the shared instance (concurrently) and ranks them by
/// iterations and time to reach D ≤ threshold. All configs must refer to the
/// same instance; otherwise IncompatibleInstanceError.
CompareResult cmd_compare(const std::vector<RunConfig>& configs, double threshold);

}  // namespace splitproj
