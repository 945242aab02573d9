#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitproj/harness.hpp"
#include "splitproj/selfcheck.hpp"

using namespace splitproj;

namespace {

RunConfig small_config(std::uint64_t seed = 1) {
  RunConfig c;
  c.spec.m = 8;
  c.spec.k = 5;
  c.spec.seed = seed;
  c.timing = false;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::size_t fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST(Algorithm, NamesRoundTrip) {
  for (Algorithm a : {Algorithm::kPm, Algorithm::kPspm, Algorithm::kPpsm, Algorithm::kScep})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW((void)parse_algorithm("egpm"), std::invalid_argument);
}

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c = small_config(4);
  c.algorithm = Algorithm::kScep;
  c.beta_exponent = 0.9;
  c.stop.max_iter = 123;
  c.stop.d_tol = 1e-5;
  c.csv_out = "trace.csv";
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.spec, c.spec);
  EXPECT_EQ(back.algorithm, c.algorithm);
  EXPECT_EQ(back.beta_exponent, c.beta_exponent);
  EXPECT_EQ(back.stop.max_iter, 123u);
  EXPECT_EQ(back.stop.d_tol, c.stop.d_tol);
  EXPECT_FALSE(back.stop.residual_tol.has_value());
  EXPECT_EQ(back.timing, false);
  EXPECT_EQ(back.csv_out, c.csv_out);
  EXPECT_FALSE(back.summary_out.has_value());
}

TEST(RunConfig, BadFieldNamed) {
  try {
    (void)config_from_json(json{{"max_iter", -3}});
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("config.max_iter"), std::string::npos);
  }
  EXPECT_THROW((void)config_from_json(json{{"algorithm", "egpm"}}), SchemaError);
  EXPECT_THROW((void)config_from_json(json{{"timing", 1}}), SchemaError);
}

TEST(CmdRun, TraceShapeAndSummary) {
  RunConfig c = small_config();
  c.spec.m = 30;
  c.spec.k = 20;
  const RunResult r = cmd_run(c);
  EXPECT_EQ(r.trace.rows.size(), 400u);
  EXPECT_EQ(r.summary.iterations, 400u);
  EXPECT_LT(*r.summary.final_d, *r.summary.initial_d);
  EXPECT_EQ(r.summary.invariant_violations, r.trace.fejer_violations());
  EXPECT_FALSE(r.summary.wall_ms.has_value());
  EXPECT_TRUE(r.summary.schedule_certified);

  const auto rows = lines(trace_csv(r.trace, false));
  ASSERT_EQ(rows.size(), 401u);
  EXPECT_EQ(rows[0], kTraceCsvHeader);
  for (const auto& row : rows) EXPECT_EQ(fields(row), 9u);
}

TEST(CmdRun, TimingColumnFilledOnlyWhenEnabled) {
  RunConfig c = small_config();
  c.stop.max_iter = 5;
  c.timing = true;
  const auto with = lines(trace_csv(cmd_run(c).trace, true));
  EXPECT_NE(with[1].back(), ',');
  const auto without = lines(trace_csv(cmd_run(c).trace, false));
  EXPECT_EQ(without[1].back(), ',');
}

TEST(CmdRun, ByteIdenticalWithoutTiming) {
  RunConfig c = small_config(3);
  const auto dir = std::filesystem::temp_directory_path();
  c.csv_out = dir / "splitproj_det_a.csv";
  (void)cmd_run(c);
  c.csv_out = dir / "splitproj_det_b.csv";
  (void)cmd_run(c);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  EXPECT_EQ(slurp(dir / "splitproj_det_a.csv"), slurp(dir / "splitproj_det_b.csv"));
  EXPECT_FALSE(slurp(dir / "splitproj_det_a.csv").empty());
}

TEST(CmdRun, PspmRefusedOnGeneral) {
  RunConfig c = small_config();
  c.algorithm = Algorithm::kPspm;
  try {
    (void)cmd_run(c);
    FAIL();
  } catch (const IncompatibleInstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("general"), std::string::npos);
  }
}

TEST(CmdRun, PmRefusesMultiComponent) {
  RunConfig c = small_config();
  c.spec.variant = Variant::kScep;
  c.spec.n_f = 2;
  EXPECT_THROW((void)cmd_run(c), IncompatibleInstanceError);
  c.algorithm = Algorithm::kPpsm;
  EXPECT_NO_THROW((void)cmd_run(c));
}

TEST(CmdRun, UncertifiedScheduleWarns) {
  RunConfig c = small_config();
  c.beta_exponent = 0.4;
  c.stop.max_iter = 10;
  const RunResult r = cmd_run(c);
  EXPECT_FALSE(r.summary.schedule_certified);
  EXPECT_FALSE(r.summary.schedule_warnings.empty());
}

TEST(CmdCompare, AlignedColumnsAndRanking) {
  RunConfig pm = small_config(2);
  pm.spec.variant = Variant::kResolventFriendly;
  RunConfig pspm = pm;
  pspm.algorithm = Algorithm::kPspm;
  const CompareResult r = cmd_compare({pm, pspm}, 1e-2);
  ASSERT_EQ(r.entries.size(), 2u);
  const auto rows = lines(r.csv);
  EXPECT_EQ(rows[0], "n,D_pm,D_pspm");
  EXPECT_EQ(rows.size(), 402u);  // header, D_0 … D_400
  for (const auto& row : rows) EXPECT_EQ(fields(row), 3u);
  EXPECT_TRUE(r.entries[0].iterations_to_threshold.has_value());
  EXPECT_TRUE(r.entries[1].iterations_to_threshold.has_value());
  std::vector<std::size_t> ranks{r.entries[0].rank_by_iterations, r.entries[1].rank_by_iterations};
  std::sort(ranks.begin(), ranks.end());
  EXPECT_EQ(ranks, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(r.summary()["runs"].size(), 2u);
}

TEST(CmdCompare, SingleConfigDegenerate) {
  const CompareResult r = cmd_compare({small_config()}, 1e-2);
  EXPECT_EQ(lines(r.csv)[0], "n,D_pm");
  EXPECT_EQ(r.entries[0].rank_by_iterations, 1u);
}

TEST(CmdCompare, DuplicateAlgorithmsGetDistinctLabels) {
  RunConfig b = small_config();
  b.beta_exponent = 1.0;
  const CompareResult r = cmd_compare({small_config(), b}, 1e-2);
  EXPECT_EQ(lines(r.csv)[0], "n,D_pm,D_pm#2");
}

TEST(CmdCompare, DifferentSeedsRefused) {
  EXPECT_THROW((void)cmd_compare({small_config(1), small_config(2)}, 1e-2),
               IncompatibleInstanceError);
}

TEST(CmdCompare, ShorterRunLeavesEmptyCells) {
  RunConfig a = small_config();
  RunConfig b = small_config();
  b.stop.max_iter = 10;
  const auto rows = lines(cmd_compare({a, b}, 1e-2).csv);
  EXPECT_EQ(rows.back().back(), ',');
}

TEST(Selfcheck, AllPass) {
  for (const CheckResult& r : run_selfcheck()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}
