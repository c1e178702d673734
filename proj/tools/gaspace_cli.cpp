// gaspace: command line front end for the experiment harness.
//
//   gaspace run <config.json> [--seed S] [--replicas R] [--out DIR]
//   gaspace sweep  [--triples N] ...
//   gaspace census [--max-bits B] ...
//   gaspace game   [--distributions D] [--rounds N] [--table dist.json] ...
//   gaspace budget [--bits N] [--runs R] ...
//
// Exit codes: 0 success, 1 invariant violation, 2 usage/configuration/I-O error.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaspace/errors.hpp"
#include "gaspace/harness.hpp"

namespace {

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicas;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "experiment seed");
  cmd->add_option("--replicas", flags.replicas, "independent replicas")->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out, "output directory (default $GASPACE_OUT_DIR or gaspace-out)");
}

void apply_common(gaspace::ExperimentConfig& cfg, const CommonFlags& flags) {
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.replicas) cfg.replicas = *flags.replicas;
  if (flags.out) cfg.out = *flags.out;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw gaspace::ConfigError(path + ": " + e.what());
  }
}

int execute(const gaspace::ExperimentConfig& cfg) {
  const auto report = gaspace::run_experiment(cfg);
  std::cout << report.summary.dump(2) << '\n';
  std::cerr << "wrote " << (cfg.out / (std::string(gaspace::to_string(cfg.kind)) + ".csv")).string()
            << '\n';
  if (report.violation) {
    std::cerr << "invariant violation recorded in " << gaspace::to_string(cfg.kind) << " output\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossover geometry and soft selection experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, census_flags, game_flags, budget_flags;

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "experiment config JSON")->required();
  add_common(run_cmd, run_flags);

  std::uint64_t triples = 100000;
  auto* sweep_cmd = app.add_subcommand("sweep", "crossover conservation sweep");
  sweep_cmd->add_option("--triples", triples, "random triples per schema kind");
  add_common(sweep_cmd, sweep_flags);

  std::size_t max_bits = 6;
  auto* census_cmd = app.add_subcommand("census", "exhaustive crossover outcome census");
  census_cmd->add_option("--max-bits", max_bits, "largest chromosome length")->check(CLI::Range(2, 8));
  add_common(census_cmd, census_flags);

  std::size_t distributions = 100;
  std::uint64_t rounds = 100000;
  std::string table_path;
  auto* game_cmd = app.add_subcommand("game", "guessing game: analytic vs simulated win rate");
  game_cmd->add_option("--distributions", distributions, "random pair distributions");
  game_cmd->add_option("--rounds", rounds, "simulated rounds per case")->check(CLI::PositiveNumber);
  game_cmd->add_option("--table", table_path, "pair distribution JSON [[m, n, p], ...]");
  add_common(game_cmd, game_flags);

  std::size_t bits = 10;
  std::size_t runs = 1000;
  auto* budget_cmd = app.add_subcommand("budget", "discrete evaluation-budget experiment");
  budget_cmd->add_option("--bits", bits, "chromosome length N")->check(CLI::Range(4, 20));
  budget_cmd->add_option("--runs", runs, "independent runs")->check(CLI::PositiveNumber);
  add_common(budget_cmd, budget_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    gaspace::ExperimentConfig cfg;
    if (*run_cmd) {
      cfg = gaspace::ExperimentConfig::from_json(load_json(config_path));
      apply_common(cfg, run_flags);
    } else if (*sweep_cmd) {
      cfg.kind = gaspace::ExperimentKind::conservation_sweep;
      cfg.params["triples"] = triples;
      apply_common(cfg, sweep_flags);
    } else if (*census_cmd) {
      cfg.kind = gaspace::ExperimentKind::table1_census;
      cfg.params["max_bits"] = max_bits;
      apply_common(cfg, census_flags);
    } else if (*game_cmd) {
      cfg.kind = gaspace::ExperimentKind::guessgame;
      cfg.params["distributions"] = distributions;
      cfg.params["rounds"] = rounds;
      if (!table_path.empty()) cfg.params["table"] = load_json(table_path);
      apply_common(cfg, game_flags);
    } else if (*budget_cmd) {
      cfg.kind = gaspace::ExperimentKind::discrete_budget;
      cfg.params["bits"] = bits;
      cfg.params["runs"] = runs;
      apply_common(cfg, budget_flags);
    }
    cfg.validate();
    return execute(cfg);
  } catch (const std::exception& e) {
    std::cerr << "gaspace: " << e.what() << '\n';
    return 2;
  }
}
