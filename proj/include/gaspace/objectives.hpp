#pragma once

// Built-in benchmark objectives addressable by name.
//   sphere     real [-5.12, 5.12]^n, minimize sum x_k^2
//   two-basin  real [-5, 5]^n, minimize min(|x - 2|^2, |x + 2|^2): two global
//              optima, the known failure mode of the compactness stopping rule
//   onemax     n bits, maximize n - hamming(x, target) for a random target

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaspace/engine.hpp"

namespace gaspace {

struct ObjectiveSpec {
  std::string name;
  SchemaPtr schema;
  Objective objective;
  Direction direction = Direction::maximize;
  /// Known optimum, when a single one exists.
  std::optional<Chromosome> optimum;
};

std::vector<std::string> objective_names();

/// Throws ConfigError for unknown names or n < 1. `seed` picks the onemax
/// target and is ignored by the continuous objectives.
ObjectiveSpec make_objective(std::string_view name, std::size_t n, std::uint64_t seed = 0);

}  // namespace gaspace
