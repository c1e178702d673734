#pragma once

/// @file guessgame.hpp
/// The higher/lower guessing game. An opponent writes down two distinct
/// numbers m > n drawn from a pair distribution; we are shown one of them at
/// random and guess whether the hidden one is lower. A strategy guesses
/// "lower" with probability c_k after seeing k.
///
/// Win probability: 1/2 + 1/2 * sum p_mn (c_m - c_n), which exceeds 1/2 for
/// any strictly increasing c and any distribution.

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "gaspace/random.hpp"
#include "gaspace/selection.hpp"

namespace gaspace {

/// Upon seeing k, guess "the other number is lower" with probability curve(k).
struct Strategy {
  SelectionCurve curve;
};

struct PairEntry {
  double higher = 0.0;  // m
  double lower = 0.0;   // n
  double probability = 0.0;
};

/// Finite table of (m, n, p_mn) with m > n, p_mn >= 0, probabilities summing
/// to 1 within 1e-12 and at least one positive entry.
class PairDistribution {
 public:
  explicit PairDistribution(std::vector<PairEntry> entries);

  /// Parses [[m, n, p], ...].
  static PairDistribution from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::span<const PairEntry> entries() const noexcept { return entries_; }

 private:
  std::vector<PairEntry> entries_;
  std::vector<double> cumulative_;

  friend double simulate_game(const PairDistribution&, const Strategy&, std::uint64_t,
                              Rng&);
};

double analytic_win_probability(const PairDistribution& d, const Strategy& s);

/// Plays `rounds` independent rounds and returns the fraction won.
double simulate_game(const PairDistribution& d, const Strategy& s, std::uint64_t rounds, Rng& rng);
double simulate_game(const PairDistribution& d, const Strategy& s, std::uint64_t rounds,
                     std::uint64_t seed);

/// `pairs` distinct integer pairs drawn from [lo, hi] with random weights.
PairDistribution random_pair_distribution(Rng& rng, std::size_t pairs, std::int64_t lo,
                                          std::int64_t hi);

}  // namespace gaspace
