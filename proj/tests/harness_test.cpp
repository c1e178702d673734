#include "gaspace/harness.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gaspace/errors.hpp"

namespace gaspace {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gaspace-harness-" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.seed = 42;
  cfg.replicas = 2;
  switch (kind) {
    case ExperimentKind::conservation_sweep:
      cfg.params = {{"triples", 300}, {"max_bits", 24}, {"max_genes", 6}};
      break;
    case ExperimentKind::table1_census: cfg.params = {{"max_bits", 4}}; break;
    case ExperimentKind::guessgame: cfg.params = {{"distributions", 8}, {"rounds", 2000}}; break;
    case ExperimentKind::selection_compare:
      cfg.params = {{"dimension", 2}, {"population", 12}, {"max_generations", 15}};
      break;
    case ExperimentKind::ga_run:
      cfg.params = {{"dimension", 3}, {"population", 16}, {"max_generations", 20}};
      break;
    case ExperimentKind::discrete_budget: cfg.params = {{"bits", 6}, {"runs", 5}}; break;
  }
  return cfg;
}

const ExperimentKind kKinds[] = {
    ExperimentKind::conservation_sweep, ExperimentKind::table1_census,
    ExperimentKind::guessgame,          ExperimentKind::selection_compare,
    ExperimentKind::ga_run,             ExperimentKind::discrete_budget,
};

TEST(Csv, RoundTripsAndRejectsSeparators) {
  CsvTable t{{"a", "b", "d"}, {{"1", "L2", ""}, {"-2.5", "random-3", "nan"}}};
  EXPECT_EQ(parse_csv(to_csv(t)), t);
  EXPECT_THROW(to_csv(CsvTable{{"a,b"}, {}}), InputError);
  EXPECT_THROW(to_csv(CsvTable{{"a"}, {{"x\ny"}}}), InputError);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(parse_double(format_number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_number(std::int64_t{-7}), "-7");
  EXPECT_THROW(parse_int("1.5"), InputError);
}

TEST(Reports, SummaryIsRecomputableFromCsv) {
  for (ExperimentKind kind : kKinds) {
    auto cfg = small_config(kind);
    const auto dir = scratch(std::string(to_string(kind)));
    const auto report = execute_experiment(cfg);
    const auto paths = write_report(report, dir);
    const auto rows = read_csv(paths.csv);
    EXPECT_EQ(rows, report.rows) << to_string(kind);
    EXPECT_EQ(summarize_rows(kind, rows), report.summary["statistics"]) << to_string(kind);
    const auto on_disk = nlohmann::json::parse(slurp(paths.json));
    EXPECT_EQ(on_disk, report.summary);
    EXPECT_EQ(on_disk["schema_version"], 1);
    EXPECT_EQ(on_disk["experiment"], std::string(to_string(kind)));
    EXPECT_EQ(on_disk["violation"], has_violation(kind, rows));
    fs::remove_all(dir);
  }
}

TEST(Reports, ByteIdenticalAcrossRuns) {
  for (ExperimentKind kind : kKinds) {
    auto cfg = small_config(kind);
    const auto a = write_report(execute_experiment(cfg), scratch("det-a"));
    const auto b = write_report(execute_experiment(cfg), scratch("det-b"));
    EXPECT_EQ(slurp(a.csv), slurp(b.csv)) << to_string(kind);
    EXPECT_EQ(slurp(a.json), slurp(b.json)) << to_string(kind);
  }
}

TEST(Reports, ReplicasAreIndependentStreams) {
  auto cfg = small_config(ExperimentKind::guessgame);
  const auto report = execute_experiment(cfg);
  const auto& rows = report.rows;
  const std::size_t per = rows.rows.size() / 2;
  ASSERT_EQ(rows.at(per, "replica"), "1");
  EXPECT_NE(rows.at(0, "simulated"), rows.at(per, "simulated"));
  // One replica reproduces the first half.
  cfg.replicas = 1;
  const auto single = execute_experiment(cfg);
  for (std::size_t i = 0; i < per; ++i) EXPECT_EQ(single.rows.rows[i], rows.rows[i]);
}

TEST(Reports, SweepHasNoViolationsAndRecordsTheLinfCounterexample) {
  const auto report = execute_experiment(small_config(ExperimentKind::conservation_sweep));
  EXPECT_FALSE(report.violation);
  EXPECT_EQ(report.summary["statistics"]["conservation_violations"], 0);
  EXPECT_EQ(report.summary["linf_counterexample"]["parents_sum"], 7.0);
  EXPECT_EQ(report.summary["linf_counterexample"]["offspring_sum"], 6.0);
}

TEST(Reports, GameFixedCases) {
  const auto report = execute_experiment(small_config(ExperimentKind::guessgame));
  const auto fixed = report.summary["statistics"]["fixed_cases"];
  EXPECT_DOUBLE_EQ(fixed["two-point:arctan-sequence"]["analytic"].get<double>(), 0.625);
  EXPECT_EQ(fixed["hard-adversarial:hard"]["analytic"].get<double>(), 0.5);
  EXPECT_GT(fixed["adaptive-adversarial:hard"]["analytic"].get<double>(), 0.5);
  EXPECT_FALSE(report.violation);
}

TEST(Reports, CensusTotals) {
  const auto report = execute_experiment(small_config(ExperimentKind::table1_census));
  EXPECT_EQ(report.summary["statistics"]["impossible_occurrences"], 0);
  EXPECT_FALSE(report.violation);
}

TEST(Violations, Contract) {
  CsvTable sweep{{"replica", "schema", "metric", "trials", "distance_violations", "sum_violations",
                  "circumference_violations", "decomposition_violations", "max_rel_error"},
                 {{"0", "real", "Linf", "10", "0", "4", "4", "0", "0.1"}}};
  EXPECT_FALSE(has_violation(ExperimentKind::conservation_sweep, sweep));
  sweep.rows[0][2] = "L2";
  EXPECT_TRUE(has_violation(ExperimentKind::conservation_sweep, sweep));
  sweep.rows[0] = {"0", "real", "Linf", "10", "1", "0", "0", "0", "0"};
  EXPECT_TRUE(has_violation(ExperimentKind::conservation_sweep, sweep));

  CsvTable game{{"replica", "case", "curve", "soft", "analytic", "simulated", "sigma", "z",
                 "within_4sigma"},
                {{"0", "x", "hard", "0", "0.5", "0.5", "0", "0", "1"}}};
  EXPECT_FALSE(has_violation(ExperimentKind::guessgame, game));
  game.rows[0][3] = "1";
  EXPECT_TRUE(has_violation(ExperimentKind::guessgame, game));
}

TEST(Config, JsonRoundTripAndErrors) {
  auto cfg = small_config(ExperimentKind::ga_run);
  cfg.out = "somewhere";
  const auto back = ExperimentConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.to_json(), cfg.to_json());
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"kind":"hill-climb"})")),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"seed":1})")), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"kind":"ga-run","replicas":0})")),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json(nlohmann::json::parse(R"({"kind":"ga-run","params":[]})")),
               ConfigError);
  auto bad = small_config(ExperimentKind::discrete_budget);
  bad.params["bits"] = 30;
  EXPECT_THROW(execute_experiment(bad), ConfigError);
  auto bad_sweep = small_config(ExperimentKind::conservation_sweep);
  bad_sweep.params["schemas"] = {"complex"};
  EXPECT_THROW(execute_experiment(bad_sweep), ConfigError);
}

TEST(Config, OutputDirectoryFromEnvironment) {
  ::setenv(kOutputDirEnv, "/tmp/gaspace-env-out", 1);
  EXPECT_EQ(default_output_dir(), fs::path("/tmp/gaspace-env-out"));
  EXPECT_EQ(ExperimentConfig{}.out, fs::path("/tmp/gaspace-env-out"));
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(default_output_dir(), fs::path("gaspace-out"));
}

TEST(Wilson, KnownInterval) {
  const auto ci = wilson_interval(5, 10);
  EXPECT_NEAR(ci.lo, 0.2366, 1e-4);
  EXPECT_NEAR(ci.hi, 0.7634, 1e-4);
  const auto zero = wilson_interval(0, 20);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_GT(zero.hi, 0.0);
}

TEST(Budget, ReportsFractionWithInterval) {
  const auto r = discrete_budget_experiment(6, 20, 3);
  EXPECT_EQ(r.budget, 27u);
  EXPECT_EQ(r.runs, 20u);
  EXPECT_LE(r.within_one, 20u);
  EXPECT_LE(r.ci.lo, r.fraction);
  EXPECT_GE(r.ci.hi, r.fraction);
  const auto again = discrete_budget_experiment(6, 20, 3);
  EXPECT_EQ(again.within_one, r.within_one);
  EXPECT_THROW(discrete_budget_experiment(3, 5, 1), ConfigError);
}

TEST(Budget, RowsSpendTheBudget) {
  const auto report = execute_experiment(small_config(ExperimentKind::discrete_budget));
  for (std::size_t i = 0; i < report.rows.rows.size(); ++i) {
    EXPECT_EQ(report.rows.integer(i, "evaluations"), report.rows.integer(i, "budget"));
  }
  EXPECT_EQ(report.summary["statistics"]["reference_claim"]["asserted"], false);
}

}  // namespace
}  // namespace gaspace
