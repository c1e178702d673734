#include "gaspace/objectives.hpp"

#include <algorithm>

#include "gaspace/errors.hpp"

namespace gaspace {

std::vector<std::string> objective_names() { return {"sphere", "two-basin", "onemax"}; }

ObjectiveSpec make_objective(std::string_view name, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("objective dimension must be >= 1");
  ObjectiveSpec spec;
  spec.name = std::string(name);
  if (name == "sphere") {
    spec.schema = Schema::reals(n, -5.12, 5.12);
    spec.direction = Direction::minimize;
    spec.objective = [](const Chromosome& c) {
      double s = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) s += c.value(k) * c.value(k);
      return s;
    };
    spec.optimum = Chromosome::from_reals(spec.schema, std::vector<double>(n, 0.0));
  } else if (name == "two-basin") {
    spec.schema = Schema::reals(n, -5.0, 5.0);
    spec.direction = Direction::minimize;
    spec.objective = [](const Chromosome& c) {
      double left = 0.0;
      double right = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        left += (c.value(k) + 2.0) * (c.value(k) + 2.0);
        right += (c.value(k) - 2.0) * (c.value(k) - 2.0);
      }
      return std::min(left, right);
    };
  } else if (name == "onemax") {
    spec.schema = Schema::bits(n);
    spec.direction = Direction::maximize;
    Rng rng = make_rng(seed, 0x6f6e656d6178ULL);
    std::vector<std::int64_t> target(n);
    for (auto& bit : target) bit = static_cast<std::int64_t>(rng() >> 63);
    spec.optimum = Chromosome::from_ints(spec.schema, target);
    spec.objective = [target = *spec.optimum](const Chromosome& c) {
      return static_cast<double>(c.size()) - distance(c, target, Metric::hamming());
    };
  } else {
    throw ConfigError("unknown objective '" + std::string(name) + "'");
  }
  return spec;
}

}  // namespace gaspace
