#pragma once

/// @file engine.hpp
/// Generational GA loop: per-generation selection curve from the current
/// quartiles, Bernoulli admission to the parent pool, random pairing, point
/// crossover, per-locus reset mutation.
///
/// Stopping: real-valued schemas stop once the bounding-box volume of the
/// better half of the population has not reached a new minimum for
/// `stall_generations` generations. Discrete schemas stop at an evaluation
/// budget, ceil(N^1.5 ln N) for N encoded bits unless configured.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gaspace/genospace.hpp"
#include "gaspace/random.hpp"
#include "gaspace/selection.hpp"

namespace gaspace {

struct Member {
  Chromosome chromosome;
  double fitness = 0.0;
};

struct Population {
  std::vector<Member> members;
  std::size_t generation = 0;
  /// Objective evaluations spent to reach this population.
  std::uint64_t evaluations = 0;

  const Schema& schema() const { return members.front().chromosome.schema(); }
  std::vector<double> fitnesses() const;
};

using Objective = std::function<double(const Chromosome&)>;
using Initializer = std::function<Chromosome(Rng&)>;

struct EngineConfig {
  std::size_t population_size = 50;
  CurveKind curve = CurveKind::arctan;
  Direction direction = Direction::maximize;
  /// n0 for CurveKind::hard.
  double hard_threshold = 0.0;
  /// Average used by CurveKind::adaptive_hard.
  Average average = Average::mean;
  /// Cut points per crossover (1 = single point); capped at N-1.
  std::size_t crossover_points = 1;
  double mutation_rate = 0.0;
  std::size_t max_generations = 1000;
  std::size_t stall_generations = 10;
  /// Overrides the default discrete budget; also applies to real schemas.
  std::optional<std::uint64_t> evaluation_budget;
  bool elitism = false;
  std::uint64_t seed = 0;

  /// Throws ConfigError on invalid values.
  void validate() const;
};

struct GenerationStats {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double median_fitness = 0.0;
  QuartileSummary quartiles;
  /// Present for all-real schemas only.
  std::optional<double> better_half_volume;
  std::uint64_t evaluations = 0;
  /// Parent pool of the step that produced this generation (0 for the
  /// initial population).
  std::size_t parent_pool_size = 0;
  double parent_pool_mean_fitness = std::numeric_limits<double>::quiet_NaN();
  double source_mean_fitness = std::numeric_limits<double>::quiet_NaN();
  double source_median_fitness = std::numeric_limits<double>::quiet_NaN();
  /// Offspring pairs checked for distance and circumference conservation
  /// before mutation, and how many failed.
  std::size_t conservation_checks = 0;
  std::size_t conservation_violations = 0;
};

bool better(double a, double b, Direction d);

/// Index of the best member; first one wins ties.
std::size_t best_index(const Population& pop, Direction d);

/// Bounding-box volume of the ceil(n/2) best members. Throws NotApplicable
/// for schemas with non-real loci.
double better_half_volume(const Population& pop, Direction d);

GenerationStats summarize(const Population& pop, Direction d);

/// Per-locus reset: bit flip, or a uniform draw within the locus bounds.
Chromosome mutate(const Chromosome& c, double rate, Rng& rng);

/// Uniform draws within each locus' bounds.
Initializer uniform_initializer(SchemaPtr schema);

/// One generation. At most `evaluation_cap` offspring are evaluated; the
/// rest are discarded and their slots refilled from the parent pool.
std::pair<Population, GenerationStats> step(
    const Population& pop, const EngineConfig& cfg, const Objective& objective, Rng& rng,
    std::uint64_t evaluation_cap = std::numeric_limits<std::uint64_t>::max());

/// Number of bits needed to encode a discrete schema: 1 per bit locus,
/// ceil(log2(range)) per integer locus.
std::size_t encoded_bits(const Schema& schema);

/// ceil(n^1.5 ln n), n >= 2.
std::uint64_t default_evaluation_budget(std::size_t n);

enum class StopReason { stall, budget, max_generations };
std::string_view to_string(StopReason r);

struct RunResult {
  Chromosome best;
  double best_fitness = 0.0;
  std::vector<GenerationStats> history;
  StopReason stop_reason = StopReason::max_generations;
};

/// Evolves a fresh population. Schemas mixing real and discrete loci are
/// rejected.
RunResult run(const EngineConfig& cfg, const Objective& objective, SchemaPtr schema,
              Initializer initializer = {});

nlohmann::json stats_to_json(const GenerationStats& s);
nlohmann::json run_to_json(const RunResult& result);

}  // namespace gaspace
