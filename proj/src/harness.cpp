#include "gaspace/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <set>

#include "gaspace/crossover.hpp"
#include "gaspace/engine.hpp"
#include "gaspace/errors.hpp"
#include "gaspace/guessgame.hpp"
#include "gaspace/objectives.hpp"
#include "gaspace/selection.hpp"
#include "gaspace/serialization.hpp"

namespace gaspace {

using nlohmann::json;
using Row = std::vector<std::string>;
using Rows = std::vector<Row>;

namespace {

constexpr int kSummarySchemaVersion = 1;
constexpr double kRelTolerance = 1e-9;

template <class T>
T param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("parameter '") + key + "': " + e.what());
  }
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(std::uint64_t v) { return format_number(v); }
std::string fmt(bool v) { return v ? "1" : "0"; }

/// Runs `body(replica, rng)` for every replica concurrently and concatenates
/// the rows in replica order.
template <class Body>
CsvTable run_replicas(const ExperimentConfig& cfg, Row header, Body body) {
  std::vector<std::future<Rows>> futures;
  futures.reserve(cfg.replicas);
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    futures.push_back(std::async(std::launch::async, [&cfg, &body, r] {
      Rng rng = make_rng(cfg.seed, r);
      return body(r, rng);
    }));
  }
  CsvTable table{std::move(header), {}};
  for (auto& f : futures) {
    Rows rows = f.get();
    std::ranges::move(rows, std::back_inserter(table.rows));
  }
  return table;
}

double rel_error(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ------------------------------------------------------ conservation sweep

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t distance = 0;
  std::uint64_t sum = 0;
  std::uint64_t circumference = 0;
  std::uint64_t decomposition = 0;
  double max_rel = 0.0;
};

/// d^p for finite p, d itself for Hamming and Linf. Discrete Lp goes
/// through the exact integer path.
double leg(const Chromosome& x, const Chromosome& y, const Metric& m) {
  if (m.kind() == Metric::Kind::lp) {
    return x.schema().all_discrete() ? static_cast<double>(distance_pow_exact(x, y, m.p()))
                                     : distance_pow(x, y, m.p());
  }
  return distance(x, y, m);
}

void check_triple(const Chromosome& pa, const Chromosome& pb, const Chromosome& r,
                  const CrossoverMask& mask, const Metric& m, Tally& t) {
  const bool exact = pa.schema().all_discrete();
  const auto [oa, ob] = crossover(pa, pb, mask);
  const auto differs = [&](double a, double b) {
    if (exact) return a != b;
    const double e = rel_error(a, b);
    t.max_rel = std::max(t.max_rel, e);
    return e > kRelTolerance;
  };
  ++t.trials;
  if (differs(distance(pa, pb, m), distance(oa, ob, m))) ++t.distance;
  if (differs(leg(pa, r, m) + leg(pb, r, m), leg(oa, r, m) + leg(ob, r, m))) ++t.sum;
  const double before = leg(pa, pb, m) + leg(pb, r, m) + leg(pa, r, m);
  const double after = leg(oa, ob, m) + leg(ob, r, m) + leg(oa, r, m);
  if (differs(before, after)) ++t.circumference;
  if (m.kind() == Metric::Kind::lp) {
    const auto d = decompose(pa, pb, r, mask, m.p());
    if (differs(d.a1 + d.a2, leg(pa, r, m)) || differs(d.b1 + d.b2, leg(pb, r, m)) ||
        differs(d.a1 + d.b2, leg(oa, r, m)) || differs(d.b1 + d.a2, leg(ob, r, m))) {
      ++t.decomposition;
    }
  }
}

Chromosome random_chromosome(const SchemaPtr& schema, Rng& rng) {
  return uniform_initializer(schema)(rng);
}

CsvTable conservation_sweep(const ExperimentConfig& cfg) {
  const auto triples = param<std::uint64_t>(cfg.params, "triples", 100000);
  const auto ps = param<std::vector<int>>(cfg.params, "p", {1, 2, 3});
  const auto kinds =
      param<std::vector<std::string>>(cfg.params, "schemas", {"bit", "integer", "real"});
  const auto max_bits = param<std::size_t>(cfg.params, "max_bits", 64);
  const auto max_genes = param<std::size_t>(cfg.params, "max_genes", 16);
  if (max_bits < 2 || max_genes < 2) throw ConfigError("sweep needs at least 2 loci");
  for (int p : ps) Metric::lp(p);
  for (const auto& k : kinds) {
    if (k != "bit" && k != "integer" && k != "real") {
      throw ConfigError("unknown sweep schema kind '" + k + "'");
    }
  }

  Row header{"replica", "schema", "metric", "trials", "distance_violations", "sum_violations",
             "circumference_violations", "decomposition_violations", "max_rel_error"};
  return run_replicas(cfg, header, [&](std::size_t replica, Rng& rng) {
    Rows rows;
    for (const auto& kind : kinds) {
      const bool real = kind == "real";
      std::vector<Metric> metrics;
      if (!real) metrics.push_back(Metric::hamming());
      for (int p : ps) metrics.push_back(Metric::lp(p));
      metrics.push_back(Metric::linf());
      std::vector<Tally> tallies(metrics.size());

      const std::size_t max_n = kind == "bit" ? max_bits : max_genes;
      std::map<std::size_t, SchemaPtr> schemas;
      for (std::uint64_t i = 0; i < triples; ++i) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(max_n)));
        SchemaPtr& schema = schemas[n];
        if (!schema) {
          schema = kind == "bit"       ? Schema::bits(n)
                   : kind == "integer" ? Schema::integers(n, -1000, 1000)
                                       : Schema::reals(n, -10.0, 10.0);
        }
        const Chromosome pa = random_chromosome(schema, rng);
        const Chromosome pb = random_chromosome(schema, rng);
        const Chromosome r = random_chromosome(schema, rng);
        const auto k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(n - 1)));
        const auto mask = CrossoverMask::random(n, k, rng);
        for (std::size_t m = 0; m < metrics.size(); ++m) {
          check_triple(pa, pb, r, mask, metrics[m], tallies[m]);
        }
      }
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        const Tally& t = tallies[m];
        rows.push_back({fmt(std::uint64_t{replica}), kind, metrics[m].name(), fmt(t.trials),
                        fmt(t.distance), fmt(t.sum), fmt(t.circumference), fmt(t.decomposition),
                        fmt(t.max_rel)});
      }
    }
    return rows;
  });
}

json summarize_sweep(const CsvTable& rows) {
  std::map<std::string, std::map<std::string, json>> by_schema;
  std::uint64_t conserved_violations = 0;
  std::uint64_t linf_sum_violations = 0;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    const auto& schema = rows.at(i, "schema");
    const auto& metric = rows.at(i, "metric");
    json& e = by_schema[schema][metric];
    if (e.is_null()) {
      e = json{{"trials", 0}, {"distance_violations", 0}, {"sum_violations", 0},
               {"circumference_violations", 0}, {"decomposition_violations", 0},
               {"max_rel_error", 0.0}};
    }
    for (const char* key : {"trials", "distance_violations", "sum_violations",
                            "circumference_violations", "decomposition_violations"}) {
      e[key] = e[key].get<std::int64_t>() + rows.integer(i, key);
    }
    e["max_rel_error"] = std::max(e["max_rel_error"].get<double>(), rows.number(i, "max_rel_error"));
    const auto dv = static_cast<std::uint64_t>(rows.integer(i, "distance_violations"));
    const auto other = static_cast<std::uint64_t>(rows.integer(i, "sum_violations") +
                                                  rows.integer(i, "circumference_violations") +
                                                  rows.integer(i, "decomposition_violations"));
    if (metric == "Linf") {
      conserved_violations += dv;
      linf_sum_violations += static_cast<std::uint64_t>(rows.integer(i, "sum_violations"));
    } else {
      conserved_violations += dv + other;
    }
  }
  json schemas = json::object();
  for (auto& [schema, metrics] : by_schema) schemas[schema] = metrics;
  return json{{"per_schema", schemas},
              {"conservation_violations", conserved_violations},
              {"linf_sum_violations", linf_sum_violations}};
}

// --------------------------------------------------------- outcome census

CsvTable table1_census(const ExperimentConfig& cfg) {
  const auto min_bits = param<std::size_t>(cfg.params, "min_bits", 2);
  const auto max_bits = param<std::size_t>(cfg.params, "max_bits", 6);
  if (min_bits < 2 || max_bits > 8 || min_bits > max_bits) {
    throw ConfigError("census bit range must satisfy 2 <= min_bits <= max_bits <= 8");
  }
  CsvTable table{{"bits"}, {}};
  for (Outcome o : kAllOutcomes) table.header.emplace_back(to_string(o));
  // Deterministic enumeration; replicas would only repeat it.
  std::vector<std::future<OutcomeCensus>> futures;
  for (std::size_t n = min_bits; n <= max_bits; ++n) {
    futures.push_back(std::async(std::launch::async, [n] { return enumerate_outcomes(n); }));
  }
  for (auto& f : futures) {
    const OutcomeCensus c = f.get();
    Row row{fmt(std::uint64_t{c.bits})};
    for (Outcome o : kAllOutcomes) row.push_back(fmt(c[o]));
    table.rows.push_back(std::move(row));
  }
  return table;
}

json summarize_census(const CsvTable& rows) {
  json totals = json::object();
  json by_row = json::object();
  for (Outcome o : kAllOutcomes) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < rows.rows.size(); ++i) total += rows.integer(i, to_string(o));
    totals[std::string(to_string(o))] = total;
    if (o != Outcome::tie) by_row[std::to_string(table_row(o))] = total;
  }
  const auto impossible = totals["oopp"].get<std::int64_t>() + totals["ppoo"].get<std::int64_t>();
  json nonzero = json::object();
  for (int row = 2; row <= 5; ++row) {
    nonzero[std::to_string(row)] = by_row[std::to_string(row)].get<std::int64_t>() > 0;
  }
  return json{{"totals", totals},
              {"by_table_row", by_row},
              {"impossible_occurrences", impossible},
              {"rows_2_to_5_nonzero", nonzero}};
}

// ------------------------------------------------------------ guessing game

std::vector<double> support_values(const PairDistribution& d) {
  std::vector<double> v;
  for (const PairEntry& e : d.entries()) {
    v.push_back(e.higher);
    v.push_back(e.lower);
  }
  return v;
}

SelectionCurve game_curve(const std::string& name, const PairDistribution& d) {
  if (name == "arctan-sequence") return SelectionCurve::arctan_sequence();
  if (name == "arctan-sequence-wide") {
    return SelectionCurve::sequence(
        [](double k) { return 0.5 + std::atan(k / 5.0) / std::numbers::pi; },
        "arctan-sequence-wide", true);
  }
  const auto support = support_values(d);
  if (name == "arctan") return SelectionCurve::arctan(quartiles(support));
  if (name == "tanh") return SelectionCurve::tanh(quartiles(support));
  if (name == "adaptive-hard") return adaptive_threshold(support);
  throw ConfigError("unknown guessing-game curve '" + name + "'");
}

Row game_row(std::size_t replica, const std::string& label, const PairDistribution& d,
             const SelectionCurve& curve, std::uint64_t rounds, Rng& rng) {
  const Strategy s{curve};
  const double analytic = analytic_win_probability(d, s);
  const double simulated = simulate_game(d, s, rounds, rng);
  const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(rounds));
  const double z = sigma > 0.0 ? (simulated - analytic) / sigma
                   : simulated == analytic ? 0.0
                                           : HUGE_VAL;
  return {fmt(std::uint64_t{replica}), label, curve.name(), fmt(curve.soft()), fmt(analytic),
          fmt(simulated), fmt(sigma), fmt(z), fmt(std::fabs(z) <= 4.0)};
}

CsvTable guessgame_experiment(const ExperimentConfig& cfg) {
  const auto distributions = param<std::size_t>(cfg.params, "distributions", 100);
  const auto rounds = param<std::uint64_t>(cfg.params, "rounds", 100000);
  const auto max_pairs = param<std::size_t>(cfg.params, "max_pairs", 6);
  const auto lo = param<std::int64_t>(cfg.params, "support_min", -20);
  const auto hi = param<std::int64_t>(cfg.params, "support_max", 20);
  const auto curves = param<std::vector<std::string>>(
      cfg.params, "curves", {"arctan-sequence", "arctan", "tanh", "arctan-sequence-wide"});
  const auto hard_n0 = param<double>(cfg.params, "hard_threshold", 0.0);
  if (rounds == 0) throw ConfigError("rounds must be >= 1");
  if (curves.empty()) throw ConfigError("at least one curve is required");
  std::optional<PairDistribution> table;
  if (cfg.params.contains("table")) table = PairDistribution::from_json(cfg.params.at("table"));

  Row header{"replica", "case", "curve", "soft", "analytic", "simulated", "sigma", "z",
             "within_4sigma"};
  return run_replicas(cfg, header, [&](std::size_t replica, Rng& rng) {
    Rows rows;
    if (table) {
      for (const auto& name : curves) {
        rows.push_back(game_row(replica, "table", *table, game_curve(name, *table), rounds, rng));
      }
      return rows;
    }
    const PairDistribution two_point({{1.0, 0.0, 1.0}});
    rows.push_back(game_row(replica, "two-point", two_point, SelectionCurve::arctan_sequence(),
                            rounds, rng));
    // Whole support on one side of n0: the step curve cannot tell m from n.
    const PairDistribution adversarial({{hard_n0 + 2.0, hard_n0 + 1.0, 1.0}});
    rows.push_back(game_row(replica, "hard-adversarial", adversarial,
                            SelectionCurve::hard(hard_n0), rounds, rng));
    rows.push_back(game_row(replica, "adaptive-adversarial", adversarial,
                            game_curve("adaptive-hard", adversarial), rounds, rng));
    for (std::size_t i = 0; i < distributions; ++i) {
      const auto pairs = static_cast<std::size_t>(
          uniform_int(rng, 1, static_cast<std::int64_t>(max_pairs)));
      const PairDistribution d = random_pair_distribution(rng, pairs, lo, hi);
      const auto& name = curves[i % curves.size()];
      rows.push_back(game_row(replica, "random-" + std::to_string(i), d, game_curve(name, d),
                              rounds, rng));
    }
    return rows;
  });
}

json summarize_game(const CsvTable& rows) {
  std::int64_t soft = 0;
  std::int64_t soft_above = 0;
  std::int64_t within = 0;
  double min_soft = HUGE_VAL;
  std::vector<double> abs_z;
  json fixed = json::object();
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    const double analytic = rows.number(i, "analytic");
    within += rows.integer(i, "within_4sigma");
    abs_z.push_back(std::fabs(rows.number(i, "z")));
    if (rows.integer(i, "soft") == 1) {
      ++soft;
      soft_above += analytic > 0.5;
      min_soft = std::min(min_soft, analytic);
    }
    const auto& label = rows.at(i, "case");
    if (label.rfind("random-", 0) != 0 && rows.integer(i, "replica") == 0) {
      fixed[label + ":" + rows.at(i, "curve")] =
          json{{"analytic", analytic}, {"simulated", rows.number(i, "simulated")}};
    }
  }
  const auto n = static_cast<std::int64_t>(rows.rows.size());
  return json{{"cases", n},
              {"soft_cases", soft},
              {"soft_above_half", soft_above},
              {"soft_min_analytic", number_or_null(min_soft)},
              {"within_4sigma", within},
              {"within_4sigma_fraction", n ? static_cast<double>(within) / static_cast<double>(n)
                                           : 0.0},
              {"mean_abs_z", number_or_null(mean(abs_z))},
              {"fixed_cases", fixed}};
}

// ------------------------------------------------------------ engine runs

struct EngineSetup {
  ObjectiveSpec objective;
  EngineConfig engine;
};

EngineSetup engine_setup(const json& p, std::uint64_t objective_seed) {
  EngineSetup s{make_objective(param<std::string>(p, "objective", "sphere"),
                               param<std::size_t>(p, "dimension", 4), objective_seed),
                {}};
  EngineConfig& e = s.engine;
  e.direction = s.objective.direction;
  e.population_size = param<std::size_t>(p, "population", 50);
  e.curve = parse_curve_kind(param<std::string>(p, "curve", "arctan"));
  e.hard_threshold = param<double>(p, "hard_threshold", 0.0);
  const auto avg = param<std::string>(p, "average", "mean");
  if (avg != "mean" && avg != "median") throw ConfigError("average must be mean or median");
  e.average = avg == "mean" ? Average::mean : Average::median;
  e.crossover_points = param<std::size_t>(p, "crossover_points", 1);
  e.mutation_rate = param<double>(p, "mutation_rate", 0.0);
  e.max_generations = param<std::size_t>(p, "max_generations", 500);
  e.stall_generations = param<std::size_t>(p, "stall_generations", 10);
  e.elitism = param<bool>(p, "elitism", false);
  if (p.contains("evaluation_budget")) e.evaluation_budget = param<std::uint64_t>(p, "evaluation_budget", 0);
  e.validate();
  return s;
}

CsvTable ga_run_experiment(const ExperimentConfig& cfg) {
  engine_setup(cfg.params, 0);
  Row header{"replica", "generation", "best_fitness", "median_fitness", "q1", "q3",
             "better_half_volume", "evaluations", "parent_pool_size", "parent_pool_mean_fitness",
             "conservation_checks", "conservation_violations", "stop_reason"};
  return run_replicas(cfg, header, [&](std::size_t replica, Rng& rng) {
    EngineSetup s = engine_setup(cfg.params, rng());
    s.engine.seed = rng();
    const RunResult result = run(s.engine, s.objective.objective, s.objective.schema);
    Rows rows;
    for (std::size_t g = 0; g < result.history.size(); ++g) {
      const GenerationStats& h = result.history[g];
      const bool last = g + 1 == result.history.size();
      rows.push_back({fmt(std::uint64_t{replica}), fmt(std::uint64_t{h.generation}),
                      fmt(h.best_fitness), fmt(h.median_fitness), fmt(h.quartiles.q1),
                      fmt(h.quartiles.q3),
                      fmt(h.better_half_volume.value_or(std::nan(""))), fmt(h.evaluations),
                      fmt(std::uint64_t{h.parent_pool_size}), fmt(h.parent_pool_mean_fitness),
                      fmt(std::uint64_t{h.conservation_checks}),
                      fmt(std::uint64_t{h.conservation_violations}),
                      last ? std::string(to_string(result.stop_reason)) : std::string("-")});
    }
    return rows;
  });
}

json summarize_ga(const CsvTable& rows) {
  json runs = json::array();
  std::vector<double> finals;
  std::int64_t violations = 0;
  std::int64_t checks = 0;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    violations += rows.integer(i, "conservation_violations");
    checks += rows.integer(i, "conservation_checks");
    if (rows.at(i, "stop_reason") == "-") continue;
    finals.push_back(rows.number(i, "best_fitness"));
    runs.push_back(json{{"replica", rows.integer(i, "replica")},
                        {"generations", rows.integer(i, "generation")},
                        {"evaluations", rows.integer(i, "evaluations")},
                        {"stop_reason", rows.at(i, "stop_reason")},
                        {"final_best_fitness", rows.number(i, "best_fitness")},
                        {"final_volume", number_or_null(rows.number(i, "better_half_volume"))}});
  }
  double sd = 0.0;
  const double m = mean(finals);
  for (double f : finals) sd += (f - m) * (f - m);
  sd = finals.size() > 1 ? std::sqrt(sd / static_cast<double>(finals.size() - 1)) : 0.0;
  const double half = finals.size() > 1
                          ? 1.959963984540054 * sd / std::sqrt(static_cast<double>(finals.size()))
                          : 0.0;
  return json{{"runs", runs},
              {"mean_final_best_fitness", number_or_null(m)},
              {"ci95", json::array({number_or_null(m - half), number_or_null(m + half)})},
              {"conservation_checks", checks},
              {"conservation_violations", violations}};
}

// ------------------------------------------------------- selection compare

CsvTable selection_compare_experiment(const ExperimentConfig& cfg) {
  const auto curves = param<std::vector<std::string>>(
      cfg.params, "curves", {"arctan", "tanh", "hard", "adaptive-hard"});
  for (const auto& c : curves) parse_curve_kind(c);
  engine_setup(cfg.params, 0);
  Row header{"replica", "curve", "objective", "generations", "evaluations", "stop_reason",
             "best_fitness", "final_volume", "adversarial_win_probability"};
  return run_replicas(cfg, header, [&](std::size_t replica, Rng& rng) {
    Rows rows;
    const std::uint64_t objective_seed = rng();
    const std::uint64_t engine_seed = rng();
    for (const auto& name : curves) {
      json p = cfg.params;
      p["curve"] = name;
      EngineSetup s = engine_setup(p, objective_seed);
      s.engine.seed = engine_seed;
      const RunResult result = run(s.engine, s.objective.objective, s.objective.schema);
      const GenerationStats& last = result.history.back();

      // Same curve family on the two-value support n0+1 < n0+2.
      const double n0 = s.engine.hard_threshold;
      const PairDistribution adversarial({{n0 + 2.0, n0 + 1.0, 1.0}});
      const std::vector<double> support{n0 + 2.0, n0 + 1.0};
      const SelectionCurve game = build_curve(parse_curve_kind(name), support,
                                              CurveOptions{Direction::maximize, n0, s.engine.average});
      rows.push_back({fmt(std::uint64_t{replica}), name, s.objective.name,
                      fmt(std::uint64_t{last.generation}), fmt(last.evaluations),
                      std::string(to_string(result.stop_reason)), fmt(result.best_fitness),
                      fmt(last.better_half_volume.value_or(std::nan(""))),
                      fmt(analytic_win_probability(adversarial, Strategy{game}))});
    }
    return rows;
  });
}

json summarize_compare(const CsvTable& rows) {
  std::map<std::string, std::vector<std::size_t>> by_curve;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) by_curve[rows.at(i, "curve")].push_back(i);
  json out = json::object();
  for (const auto& [curve, idx] : by_curve) {
    std::vector<double> best, gens, win;
    std::int64_t stalls = 0;
    for (std::size_t i : idx) {
      best.push_back(rows.number(i, "best_fitness"));
      gens.push_back(rows.number(i, "generations"));
      win.push_back(rows.number(i, "adversarial_win_probability"));
      stalls += rows.at(i, "stop_reason") == "stall";
    }
    out[curve] = json{{"runs", idx.size()},
                      {"mean_best_fitness", number_or_null(mean(best))},
                      {"mean_generations", number_or_null(mean(gens))},
                      {"stall_stops", stalls},
                      {"adversarial_win_probability", number_or_null(mean(win))}};
  }
  return json{{"per_curve", out}};
}

// ---------------------------------------------------------- discrete budget

struct BudgetSetup {
  std::size_t bits;
  std::size_t runs;
  std::size_t population;
  double mutation_rate;
  CurveKind curve;
};

BudgetSetup budget_setup(const json& p) {
  BudgetSetup s{};
  s.bits = param<std::size_t>(p, "bits", 10);
  if (s.bits < 4 || s.bits > 20) throw ConfigError("discrete budget experiment needs 4 <= bits <= 20");
  s.runs = param<std::size_t>(p, "runs", 1000);
  if (s.runs == 0) throw ConfigError("runs must be >= 1");
  const std::uint64_t budget = default_evaluation_budget(s.bits);
  const auto auto_pop = std::max<std::size_t>(
      4, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(budget)))));
  s.population = param<std::size_t>(p, "population", auto_pop);
  if (s.population > budget) throw ConfigError("population exceeds the evaluation budget");
  s.mutation_rate = param<double>(p, "mutation_rate", 1.0 / static_cast<double>(s.bits));
  s.curve = parse_curve_kind(param<std::string>(p, "curve", "arctan"));
  return s;
}

Rows budget_rows(const BudgetSetup& s, std::size_t replica, Rng& rng) {
  Rows rows;
  for (std::size_t run_index = 0; run_index < s.runs; ++run_index) {
    const ObjectiveSpec objective = make_objective("onemax", s.bits, rng());
    EngineConfig e;
    e.population_size = s.population;
    e.curve = s.curve;
    e.direction = objective.direction;
    e.mutation_rate = s.mutation_rate;
    e.max_generations = std::numeric_limits<std::size_t>::max();
    e.seed = rng();
    const RunResult result = run(e, objective.objective, objective.schema);
    const double d = distance(result.best, *objective.optimum, Metric::hamming());
    rows.push_back({fmt(std::uint64_t{replica}), fmt(std::uint64_t{run_index}),
                    fmt(std::uint64_t{s.bits}), fmt(default_evaluation_budget(s.bits)),
                    fmt(result.history.back().evaluations), fmt(result.best_fitness), fmt(d),
                    fmt(d <= 1.0)});
  }
  return rows;
}

const Row kBudgetHeader{"replica", "run", "bits", "budget", "evaluations", "best_fitness",
                        "best_distance", "within_1"};

json summarize_budget(const CsvTable& rows) {
  std::uint64_t within = 0;
  std::vector<double> dist;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    within += static_cast<std::uint64_t>(rows.integer(i, "within_1"));
    dist.push_back(rows.number(i, "best_distance"));
  }
  const auto n = static_cast<std::uint64_t>(rows.rows.size());
  const Interval ci = wilson_interval(within, n);
  const std::int64_t bits = n ? rows.integer(0, "bits") : 0;
  return json{{"runs", n},
              {"bits", bits},
              {"budget", n ? rows.integer(0, "budget") : 0},
              {"exhaustive_evaluations", n ? (std::int64_t{1} << bits) : 0},
              {"within_1", within},
              {"fraction_within_1", n ? static_cast<double>(within) / static_cast<double>(n) : 0.0},
              {"wilson95", json::array({ci.lo, ci.hi})},
              {"mean_best_distance", number_or_null(mean(dist))},
              {"reference_claim",
               json{{"fraction_within_1_exceeds", 0.5},
                    {"asserted", false},
                    {"note", "reported for comparison; not a pass/fail gate"}}}};
}

}  // namespace

// ----------------------------------------------------------------- public

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "conservation-sweep") return ExperimentKind::conservation_sweep;
  if (name == "table1-census") return ExperimentKind::table1_census;
  if (name == "guessgame") return ExperimentKind::guessgame;
  if (name == "selection-compare") return ExperimentKind::selection_compare;
  if (name == "ga-run") return ExperimentKind::ga_run;
  if (name == "discrete-budget") return ExperimentKind::discrete_budget;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::conservation_sweep: return "conservation-sweep";
    case ExperimentKind::table1_census: return "table1-census";
    case ExperimentKind::guessgame: return "guessgame";
    case ExperimentKind::selection_compare: return "selection-compare";
    case ExperimentKind::ga_run: return "ga-run";
    case ExperimentKind::discrete_budget: return "discrete-budget";
  }
  return "?";
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "gaspace-out";
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    cfg.replicas = j.value("replicas", cfg.replicas);
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("params")) cfg.params = j.at("params");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  if (!cfg.params.is_object()) throw ConfigError("params must be a JSON object");
  cfg.validate();
  return cfg;
}

json ExperimentConfig::to_json() const {
  return json{{"kind", std::string(to_string(kind))},
              {"seed", seed},
              {"replicas", replicas},
              {"out", out.string()},
              {"params", params}};
}

void ExperimentConfig::validate() const {
  if (replicas < 1) throw ConfigError("replicas must be >= 1");
  if (out.empty()) throw ConfigError("output path is empty");
}

json summarize_rows(ExperimentKind kind, const CsvTable& rows) {
  switch (kind) {
    case ExperimentKind::conservation_sweep: return summarize_sweep(rows);
    case ExperimentKind::table1_census: return summarize_census(rows);
    case ExperimentKind::guessgame: return summarize_game(rows);
    case ExperimentKind::selection_compare: return summarize_compare(rows);
    case ExperimentKind::ga_run: return summarize_ga(rows);
    case ExperimentKind::discrete_budget: return summarize_budget(rows);
  }
  return {};
}

bool has_violation(ExperimentKind kind, const CsvTable& rows) {
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    switch (kind) {
      case ExperimentKind::conservation_sweep: {
        if (rows.integer(i, "distance_violations") > 0) return true;
        if (rows.at(i, "metric") != "Linf" &&
            rows.integer(i, "sum_violations") + rows.integer(i, "circumference_violations") +
                    rows.integer(i, "decomposition_violations") >
                0) {
          return true;
        }
        break;
      }
      case ExperimentKind::table1_census:
        if (rows.integer(i, "oopp") + rows.integer(i, "ppoo") > 0) return true;
        break;
      case ExperimentKind::guessgame:
        if (rows.integer(i, "soft") == 1 && !(rows.number(i, "analytic") > 0.5)) return true;
        break;
      case ExperimentKind::ga_run:
        if (rows.integer(i, "conservation_violations") > 0) return true;
        break;
      case ExperimentKind::selection_compare:
      case ExperimentKind::discrete_budget: break;
    }
  }
  return false;
}

ExperimentReport execute_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.kind = cfg.kind;
  switch (cfg.kind) {
    case ExperimentKind::conservation_sweep: report.rows = conservation_sweep(cfg); break;
    case ExperimentKind::table1_census: report.rows = table1_census(cfg); break;
    case ExperimentKind::guessgame: report.rows = guessgame_experiment(cfg); break;
    case ExperimentKind::selection_compare: report.rows = selection_compare_experiment(cfg); break;
    case ExperimentKind::ga_run: report.rows = ga_run_experiment(cfg); break;
    case ExperimentKind::discrete_budget: {
      const BudgetSetup s = budget_setup(cfg.params);
      report.rows = run_replicas(cfg, kBudgetHeader, [&](std::size_t replica, Rng& rng) {
        return budget_rows(s, replica, rng);
      });
      break;
    }
  }
  report.violation = has_violation(cfg.kind, report.rows);
  report.summary = json{{"schema_version", kSummarySchemaVersion},
                        {"experiment", std::string(to_string(cfg.kind))},
                        {"seed", cfg.seed},
                        {"replicas", cfg.replicas},
                        {"params", cfg.params},
                        {"rows", report.rows.rows.size()},
                        {"violation", report.violation},
                        {"statistics", summarize_rows(cfg.kind, report.rows)}};
  if (cfg.kind == ExperimentKind::conservation_sweep) {
    // Two-gene instance where the L_inf sum is not conserved.
    const auto schema = Schema::integers(2, -10, 10);
    const auto pa = Chromosome::from_ints(schema, {1, 5});
    const auto pb = Chromosome::from_ints(schema, {2, 0});
    const auto r = Chromosome::from_ints(schema, {0, 0});
    const auto [oa, ob] = crossover(pa, pb, CrossoverMask::single_point(2, 1));
    const Metric linf = Metric::linf();
    report.summary["linf_counterexample"] =
        json{{"parents_sum", distance(pa, r, linf) + distance(pb, r, linf)},
             {"offspring_sum", distance(oa, r, linf) + distance(ob, r, linf)}};
  }
  return report;
}

ReportPaths write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  const std::string stem(to_string(report.kind));
  ReportPaths paths{dir / (stem + ".csv"), dir / (stem + ".json")};
  write_csv(paths.csv, report.rows);
  std::ofstream out(paths.json, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + paths.json.string());
  out << report.summary.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + paths.json.string());
  return paths;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report = execute_experiment(cfg);
  write_report(report, cfg.out);
  return report;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

BudgetResult discrete_budget_experiment(std::size_t bits, std::size_t runs, std::uint64_t seed) {
  const BudgetSetup s = budget_setup(json{{"bits", bits}, {"runs", runs}});
  Rng rng = make_rng(seed, 0);
  const CsvTable rows{kBudgetHeader, budget_rows(s, 0, rng)};
  BudgetResult r;
  r.bits = bits;
  r.budget = default_evaluation_budget(bits);
  r.runs = runs;
  for (std::size_t i = 0; i < rows.rows.size(); ++i) r.within_one += rows.integer(i, "within_1") == 1;
  r.fraction = static_cast<double>(r.within_one) / static_cast<double>(runs);
  r.ci = wilson_interval(r.within_one, runs);
  return r;
}

}  // namespace gaspace
