#include "gaspace/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gaspace/crossover.hpp"
#include "gaspace/errors.hpp"
#include "gaspace/serialization.hpp"

namespace gaspace {

namespace {

double evaluate(const Objective& objective, const Chromosome& c, std::size_t generation) {
  double f = 0.0;
  try {
    f = objective(c);
  } catch (const std::exception& e) {
    throw EvaluationError("objective failed in generation " + std::to_string(generation) +
                          " on " + c.to_string() + ": " + e.what());
  }
  if (!std::isfinite(f)) {
    throw EvaluationError("objective returned a non-finite value in generation " +
                          std::to_string(generation) + " on " + c.to_string());
  }
  return f;
}

bool close_rel(double x, double y) {
  return std::fabs(x - y) <= 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
}

/// Distance conservation between the pairs and p-th power sum conservation
/// against `ref` for p = 1, 2. Exact for discrete schemas.
bool conserves(const Chromosome& pa, const Chromosome& pb, const Chromosome& oa,
               const Chromosome& ob, const Chromosome& ref) {
  if (pa.schema().all_discrete()) {
    for (int p : {1, 2}) {
      if (distance_pow_exact(pa, pb, p) != distance_pow_exact(oa, ob, p)) return false;
      if (distance_pow_exact(pa, ref, p) + distance_pow_exact(pb, ref, p) !=
          distance_pow_exact(oa, ref, p) + distance_pow_exact(ob, ref, p)) {
        return false;
      }
    }
    return distance(pa, pb, Metric::hamming()) == distance(oa, ob, Metric::hamming());
  }
  for (int p : {1, 2}) {
    if (!close_rel(distance_pow(pa, pb, p), distance_pow(oa, ob, p))) return false;
    if (!close_rel(distance_pow(pa, ref, p) + distance_pow(pb, ref, p),
                   distance_pow(oa, ref, p) + distance_pow(ob, ref, p))) {
      return false;
    }
  }
  return distance(pa, pb, Metric::linf()) == distance(oa, ob, Metric::linf());
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> Population::fitnesses() const {
  std::vector<double> f;
  f.reserve(members.size());
  for (const Member& m : members) f.push_back(m.fitness);
  return f;
}

void EngineConfig::validate() const {
  if (population_size < 2) throw ConfigError("population_size must be >= 2");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ConfigError("mutation_rate must lie in [0, 1]");
  }
  if (stall_generations < 1) throw ConfigError("stall_generations must be >= 1");
  if (crossover_points < 1) throw ConfigError("crossover_points must be >= 1");
  if (!std::isfinite(hard_threshold)) throw ConfigError("hard_threshold must be finite");
}

bool better(double a, double b, Direction d) {
  return d == Direction::maximize ? a > b : a < b;
}

std::size_t best_index(const Population& pop, Direction d) {
  if (pop.members.empty()) throw InputError("empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.members.size(); ++i) {
    if (better(pop.members[i].fitness, pop.members[best].fitness, d)) best = i;
  }
  return best;
}

double better_half_volume(const Population& pop, Direction d) {
  if (pop.members.empty()) throw InputError("empty population");
  if (!pop.schema().all_real()) {
    throw NotApplicable("better-half volume is defined for real-valued schemas only");
  }
  std::vector<std::size_t> order(pop.members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return better(pop.members[a].fitness, pop.members[b].fitness, d);
  });
  order.resize((order.size() + 1) / 2);

  double volume = 1.0;
  for (std::size_t k = 0; k < pop.schema().size(); ++k) {
    double lo = pop.members[order.front()].chromosome.value(k);
    double hi = lo;
    for (std::size_t i : order) {
      const double v = pop.members[i].chromosome.value(k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    volume *= hi - lo;
  }
  return volume;
}

GenerationStats summarize(const Population& pop, Direction d) {
  GenerationStats s;
  const auto f = pop.fitnesses();
  s.generation = pop.generation;
  s.best_fitness = pop.members[best_index(pop, d)].fitness;
  s.quartiles = quartiles(f);
  s.median_fitness = s.quartiles.median;
  if (pop.schema().all_real()) s.better_half_volume = better_half_volume(pop, d);
  s.evaluations = pop.evaluations;
  return s;
}

Chromosome mutate(const Chromosome& c, double rate, Rng& rng) {
  if (rate <= 0.0) return c;
  std::vector<Gene> genes(c.genes().begin(), c.genes().end());
  for (std::size_t k = 0; k < genes.size(); ++k) {
    if (!bernoulli(rng, rate)) continue;
    const Locus& l = c.schema().locus(k);
    switch (l.kind) {
      case GeneKind::bit: genes[k] = std::int64_t{1} - std::get<std::int64_t>(genes[k]); break;
      case GeneKind::integer: genes[k] = uniform_int(rng, l.int_min, l.int_max); break;
      case GeneKind::real: genes[k] = uniform_real(rng, l.real_min, l.real_max); break;
    }
  }
  return Chromosome(c.schema_ptr(), std::move(genes));
}

Initializer uniform_initializer(SchemaPtr schema) {
  return [schema = std::move(schema)](Rng& rng) {
    std::vector<Gene> genes;
    genes.reserve(schema->size());
    for (const Locus& l : schema->loci()) {
      switch (l.kind) {
        case GeneKind::bit:
        case GeneKind::integer: genes.emplace_back(uniform_int(rng, l.int_min, l.int_max)); break;
        case GeneKind::real: genes.emplace_back(uniform_real(rng, l.real_min, l.real_max)); break;
      }
    }
    return Chromosome(schema, std::move(genes));
  };
}

std::pair<Population, GenerationStats> step(const Population& pop, const EngineConfig& cfg,
                                            const Objective& objective, Rng& rng,
                                            std::uint64_t evaluation_cap) {
  cfg.validate();
  if (pop.members.size() < 2) throw InputError("population needs at least 2 members");
  const auto f = pop.fitnesses();
  const SelectionCurve curve = build_curve(
      cfg.curve, f, CurveOptions{cfg.direction, cfg.hard_threshold, cfg.average});

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    if (bernoulli(rng, curve(f[i]))) pool.push_back(i);
  }
  if (pool.size() < 2) {
    std::vector<std::size_t> order(pop.members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
      return better(f[a], f[b], cfg.direction);
    });
    pool.assign(order.begin(), order.begin() + 2);
  }
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[uniform_index(rng, i)]);
  }

  const Chromosome& reference = pop.members[best_index(pop, cfg.direction)].chromosome;
  const std::size_t n = pop.schema().size();
  GenerationStats trace;
  std::vector<Chromosome> offspring;
  for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
    const Chromosome& pa = pop.members[pool[i]].chromosome;
    const Chromosome& pb = pop.members[pool[i + 1]].chromosome;
    if (n < 2) {
      offspring.push_back(mutate(pa, cfg.mutation_rate, rng));
      offspring.push_back(mutate(pb, cfg.mutation_rate, rng));
      continue;
    }
    const auto mask = CrossoverMask::random(n, std::min(cfg.crossover_points, n - 1), rng);
    auto [oa, ob] = crossover(pa, pb, mask);
    ++trace.conservation_checks;
    if (!conserves(pa, pb, oa, ob, reference)) ++trace.conservation_violations;
    offspring.push_back(mutate(oa, cfg.mutation_rate, rng));
    offspring.push_back(mutate(ob, cfg.mutation_rate, rng));
  }
  if (offspring.size() > evaluation_cap) {
    offspring.erase(offspring.begin() + static_cast<std::ptrdiff_t>(evaluation_cap), offspring.end());
  }

  Population next;
  next.generation = pop.generation + 1;
  next.evaluations = pop.evaluations;
  next.members.reserve(pop.members.size());
  for (auto& c : offspring) {
    const double fit = evaluate(objective, c, next.generation);
    ++next.evaluations;
    next.members.push_back({std::move(c), fit});
  }

  if (cfg.elitism) {
    const Member& elite = pop.members[best_index(pop, cfg.direction)];
    if (next.members.size() < pop.members.size()) {
      next.members.push_back(elite);
    } else {
      auto worst = std::ranges::min_element(next.members, [&](const Member& a, const Member& b) {
        return better(b.fitness, a.fitness, cfg.direction);
      });
      if (better(elite.fitness, worst->fitness, cfg.direction)) *worst = elite;
    }
  }
  while (next.members.size() < pop.members.size()) {
    next.members.push_back(pop.members[pool[uniform_index(rng, pool.size())]]);
  }

  GenerationStats stats = summarize(next, cfg.direction);
  std::vector<double> pool_fitness;
  pool_fitness.reserve(pool.size());
  for (std::size_t i : pool) pool_fitness.push_back(f[i]);
  stats.parent_pool_size = pool.size();
  stats.parent_pool_mean_fitness = mean_of(pool_fitness);
  stats.source_mean_fitness = mean_of(f);
  stats.source_median_fitness = curve.summary() ? curve.summary()->median : quartiles(f).median;
  stats.conservation_checks = trace.conservation_checks;
  stats.conservation_violations = trace.conservation_violations;
  return {std::move(next), stats};
}

std::size_t encoded_bits(const Schema& schema) {
  std::size_t bits = 0;
  for (const Locus& l : schema.loci()) {
    switch (l.kind) {
      case GeneKind::bit: ++bits; break;
      case GeneKind::integer: {
        const auto range = static_cast<std::uint64_t>(l.int_max) -
                           static_cast<std::uint64_t>(l.int_min);
        bits += range == 0 ? 0 : static_cast<std::size_t>(std::bit_width(range));
        break;
      }
      case GeneKind::real: throw NotApplicable("real loci have no bit encoding");
    }
  }
  return bits;
}

std::uint64_t default_evaluation_budget(std::size_t n) {
  if (n < 2) throw ConfigError("evaluation budget needs at least 2 encoded bits");
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(std::pow(x, 1.5) * std::log(x)));
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::stall: return "stall";
    case StopReason::budget: return "budget";
    case StopReason::max_generations: return "max_generations";
  }
  return "?";
}

RunResult run(const EngineConfig& cfg, const Objective& objective, SchemaPtr schema,
              Initializer initializer) {
  cfg.validate();
  if (!schema) throw ConfigError("run needs a schema");
  if (!objective) throw ConfigError("run needs an objective");
  const bool continuous = schema->all_real();
  if (!continuous && !schema->all_discrete()) {
    throw ConfigError("schemas mixing real and discrete loci are not supported");
  }
  if (!initializer) initializer = uniform_initializer(schema);

  std::optional<std::uint64_t> budget = cfg.evaluation_budget;
  if (!continuous && !budget) budget = default_evaluation_budget(encoded_bits(*schema));
  if (budget && *budget < cfg.population_size) {
    throw ConfigError("evaluation budget " + std::to_string(*budget) +
                      " is smaller than the initial population " +
                      std::to_string(cfg.population_size));
  }

  Rng rng = make_rng(cfg.seed);
  Population pop;
  pop.members.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    Chromosome c = initializer(rng);
    if (c.schema_ptr() != schema && !(c.schema() == *schema)) {
      throw ConfigError("initializer produced a chromosome of another schema");
    }
    const double fit = evaluate(objective, c, 0);
    pop.members.push_back({std::move(c), fit});
    ++pop.evaluations;
  }

  RunResult result{pop.members[best_index(pop, cfg.direction)].chromosome, 0.0, {}, {}};
  result.best_fitness = pop.members[best_index(pop, cfg.direction)].fitness;
  result.history.push_back(summarize(pop, cfg.direction));

  double min_volume = continuous ? *result.history.back().better_half_volume : 0.0;
  std::size_t since_new_min = 0;
  for (;;) {
    if (budget && pop.evaluations >= *budget) {
      result.stop_reason = StopReason::budget;
      break;
    }
    if (continuous && since_new_min >= cfg.stall_generations) {
      result.stop_reason = StopReason::stall;
      break;
    }
    if (pop.generation >= cfg.max_generations) {
      result.stop_reason = StopReason::max_generations;
      break;
    }
    const std::uint64_t cap = budget ? *budget - pop.evaluations
                                     : std::numeric_limits<std::uint64_t>::max();
    auto [next, stats] = step(pop, cfg, objective, rng, cap);
    pop = std::move(next);
    const std::size_t b = best_index(pop, cfg.direction);
    if (better(pop.members[b].fitness, result.best_fitness, cfg.direction)) {
      result.best = pop.members[b].chromosome;
      result.best_fitness = pop.members[b].fitness;
    }
    if (continuous) {
      if (*stats.better_half_volume < min_volume) {
        min_volume = *stats.better_half_volume;
        since_new_min = 0;
      } else {
        ++since_new_min;
      }
    }
    result.history.push_back(stats);
  }
  return result;
}

nlohmann::json stats_to_json(const GenerationStats& s) {
  const auto number_or_null = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  return nlohmann::json{
      {"generation", s.generation},
      {"best_fitness", s.best_fitness},
      {"median_fitness", s.median_fitness},
      {"q1", s.quartiles.q1},
      {"q3", s.quartiles.q3},
      {"better_half_volume",
       s.better_half_volume ? nlohmann::json(*s.better_half_volume) : nlohmann::json(nullptr)},
      {"evaluations", s.evaluations},
      {"parent_pool_size", s.parent_pool_size},
      {"parent_pool_mean_fitness", number_or_null(s.parent_pool_mean_fitness)},
      {"source_median_fitness", number_or_null(s.source_median_fitness)},
      {"conservation_checks", s.conservation_checks},
      {"conservation_violations", s.conservation_violations},
  };
}

nlohmann::json run_to_json(const RunResult& result) {
  auto history = nlohmann::json::array();
  for (const auto& s : result.history) history.push_back(stats_to_json(s));
  return nlohmann::json{{"schema_version", 1},
                        {"stop_reason", std::string(to_string(result.stop_reason))},
                        {"best", chromosome_to_json(result.best)},
                        {"best_fitness", result.best_fitness},
                        {"history", std::move(history)}};
}

}  // namespace gaspace
