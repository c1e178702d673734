#include "gaspace/guessgame.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "gaspace/errors.hpp"

namespace gaspace {

PairDistribution::PairDistribution(std::vector<PairEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("pair distribution is empty");
  double total = 0.0;
  bool any_positive = false;
  cumulative_.reserve(entries_.size());
  for (const PairEntry& e : entries_) {
    if (!std::isfinite(e.higher) || !std::isfinite(e.lower) || !std::isfinite(e.probability)) {
      throw InputError("pair distribution entries must be finite");
    }
    if (!(e.higher > e.lower)) throw InputError("pair entries need m > n");
    if (e.probability < 0.0) throw InputError("pair probabilities must be nonnegative");
    any_positive = any_positive || e.probability > 0.0;
    total += e.probability;
    cumulative_.push_back(total);
  }
  if (!any_positive) throw InputError("pair distribution has no positive probability");
  if (std::fabs(total - 1.0) > 1e-12) {
    throw InputError("pair probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

PairDistribution PairDistribution::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("pair distribution must be a JSON array");
  std::vector<PairEntry> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
        !row[2].is_number()) {
      throw InputError("pair distribution rows must be [m, n, p]");
    }
    entries.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
  }
  return PairDistribution(std::move(entries));
}

nlohmann::json PairDistribution::to_json() const {
  auto j = nlohmann::json::array();
  for (const PairEntry& e : entries_) j.push_back({e.higher, e.lower, e.probability});
  return j;
}

double analytic_win_probability(const PairDistribution& d, const Strategy& s) {
  double gain = 0.0;
  for (const PairEntry& e : d.entries()) {
    gain += e.probability * (s.curve(e.higher) - s.curve(e.lower));
  }
  return 0.5 + 0.5 * gain;
}

double simulate_game(const PairDistribution& d, const Strategy& s, std::uint64_t rounds,
                     Rng& rng) {
  if (rounds == 0) throw InputError("simulate_game needs at least one round");
  std::vector<std::pair<double, double>> c;
  c.reserve(d.entries_.size());
  for (const PairEntry& e : d.entries_) c.emplace_back(s.curve(e.higher), s.curve(e.lower));

  // Draw against the true total so rounding in the last cumulative entry
  // cannot push u past the table.
  const double total = d.cumulative_.back();
  std::uint64_t wins = 0;
  for (std::uint64_t i = 0; i < rounds; ++i) {
    const double u = uniform01(rng) * total;
    auto it = std::ranges::upper_bound(d.cumulative_, u);
    if (it == d.cumulative_.end()) --it;
    const auto& [c_high, c_low] = c[static_cast<std::size_t>(it - d.cumulative_.begin())];
    const bool shown_high = bernoulli(rng, 0.5);
    const bool guess_lower = bernoulli(rng, shown_high ? c_high : c_low);
    wins += shown_high == guess_lower;
  }
  return static_cast<double>(wins) / static_cast<double>(rounds);
}

double simulate_game(const PairDistribution& d, const Strategy& s, std::uint64_t rounds,
                     std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return simulate_game(d, s, rounds, rng);
}

PairDistribution random_pair_distribution(Rng& rng, std::size_t pairs, std::int64_t lo,
                                          std::int64_t hi) {
  if (hi <= lo) throw InputError("need hi > lo for a pair support");
  const auto values = static_cast<double>(hi - lo + 1);
  if (static_cast<double>(pairs) > values * (values - 1) / 2 || pairs == 0) {
    throw InputError("cannot draw that many distinct pairs");
  }
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<PairEntry> entries;
  double total = 0.0;
  while (entries.size() < pairs) {
    std::int64_t a = uniform_int(rng, lo, hi);
    std::int64_t b = uniform_int(rng, lo, hi);
    if (a == b) continue;
    if (a < b) std::swap(a, b);
    if (!seen.emplace(a, b).second) continue;
    const double w = 0.05 + uniform01(rng);
    total += w;
    entries.push_back({static_cast<double>(a), static_cast<double>(b), w});
  }
  double sum = 0.0;
  for (PairEntry& e : entries) {
    e.probability /= total;
    sum += e.probability;
  }
  // Fold the normalization residue into the first entry.
  entries.front().probability += 1.0 - sum;
  return PairDistribution(std::move(entries));
}

}  // namespace gaspace
