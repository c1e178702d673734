#pragma once

/// @file harness.hpp
/// Experiment runner behind the CLI. Every experiment produces a CSV of raw
/// rows and a JSON summary whose "statistics" block is a pure function of
/// those rows (summarize_rows), so re-reading the CSV reproduces it exactly.
///
/// Replicas run concurrently; replica i draws from make_rng(seed, i) and the
/// rows are concatenated in replica order, so output bytes depend only on
/// (config, seed).

#include <cstdint>
#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "gaspace/csv.hpp"

namespace gaspace {

enum class ExperimentKind {
  conservation_sweep,
  table1_census,
  guessgame,
  selection_compare,
  ga_run,
  discrete_budget,
};

/// "conservation-sweep", "table1-census", "guessgame", "selection-compare",
/// "ga-run", "discrete-budget".
ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "GASPACE_OUT_DIR";

/// $GASPACE_OUT_DIR, or "gaspace-out" when unset.
std::filesystem::path default_output_dir();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::conservation_sweep;
  std::uint64_t seed = 1;
  std::size_t replicas = 1;
  std::filesystem::path out = default_output_dir();
  /// Experiment-specific parameters; see README for the keys per kind.
  nlohmann::json params = nlohmann::json::object();

  /// {"kind": ..., "seed": ..., "replicas": ..., "out": ..., "params": {...}}
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::conservation_sweep;
  CsvTable rows;
  nlohmann::json summary;
  bool violation = false;
};

/// Statistics block of the summary, computed from the rows alone.
nlohmann::json summarize_rows(ExperimentKind kind, const CsvTable& rows);

/// True iff at least one row records an invariant violation.
bool has_violation(ExperimentKind kind, const CsvTable& rows);

/// Runs the experiment in memory.
ExperimentReport execute_experiment(const ExperimentConfig& cfg);

struct ReportPaths {
  std::filesystem::path csv;
  std::filesystem::path json;
};

/// Writes <dir>/<kind>.csv and <dir>/<kind>.json, creating `dir`.
ReportPaths write_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// execute_experiment followed by write_report(cfg.out).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

struct BudgetResult {
  std::size_t bits = 0;
  std::uint64_t budget = 0;
  std::size_t runs = 0;
  std::size_t within_one = 0;
  double fraction = 0.0;
  Interval ci;
};

/// Evolves `runs` OneMax instances with random targets under the default
/// ceil(N^1.5 ln N) evaluation budget and reports how often the best
/// chromosome found lies within Hamming distance 1 of the target.
/// Requires 4 <= bits <= 20.
BudgetResult discrete_budget_experiment(std::size_t bits, std::size_t runs, std::uint64_t seed);

}  // namespace gaspace
