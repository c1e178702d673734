#include "gaspace/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gaspace/errors.hpp"

namespace gaspace {

namespace {

double pow_int(double base, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= base;
  return r;
}

double abs_diff(const Gene& x, const Gene& y) {
  if (const auto* xi = std::get_if<std::int64_t>(&x)) {
    const std::int64_t d = *xi - std::get<std::int64_t>(y);
    return static_cast<double>(d < 0 ? -d : d);
  }
  return std::fabs(std::get<double>(x) - std::get<double>(y));
}

void check_mask(const Chromosome& c, const CrossoverMask& mask) {
  if (mask.length() != c.size()) {
    throw InputError("mask length " + std::to_string(mask.length()) +
                     " does not match chromosome length " + std::to_string(c.size()));
  }
}

}  // namespace

// --------------------------------------------------------- CrossoverMask

CrossoverMask::CrossoverMask(std::size_t length, std::vector<std::size_t> cut_points)
    : cuts_(std::move(cut_points)), exchanged_(length, 0) {
  if (length < 2) throw InputError("crossover needs at least 2 loci");
  if (cuts_.empty()) throw InputError("crossover mask needs at least one cut point");
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i] < 1 || cuts_[i] > length - 1) {
      throw InputError("cut point " + std::to_string(cuts_[i]) + " not in 1.." +
                       std::to_string(length - 1));
    }
    if (i > 0 && cuts_[i] <= cuts_[i - 1]) {
      throw InputError("cut points must be strictly increasing");
    }
  }
  bool swap = false;
  std::size_t next = 0;
  for (std::size_t k = 0; k < length; ++k) {
    while (next < cuts_.size() && cuts_[next] == k) {
      swap = !swap;
      ++next;
    }
    exchanged_[k] = swap;
  }
}

CrossoverMask CrossoverMask::random(std::size_t length, std::size_t k, Rng& rng) {
  if (length < 2) throw InputError("crossover needs at least 2 loci");
  if (k < 1 || k > length - 1) {
    throw InputError("cannot place " + std::to_string(k) + " cuts in " + std::to_string(length) +
                     " loci");
  }
  // Partial Fisher-Yates over the interior positions.
  std::vector<std::size_t> positions(length - 1);
  std::iota(positions.begin(), positions.end(), std::size_t{1});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_index(rng, positions.size() - i);
    std::swap(positions[i], positions[j]);
  }
  positions.resize(k);
  std::ranges::sort(positions);
  return CrossoverMask(length, std::move(positions));
}

std::vector<CrossoverMask> CrossoverMask::all(std::size_t length) {
  if (length < 2 || length > 24) throw InputError("mask enumeration supports 2..24 loci");
  const std::size_t interior = length - 1;
  std::vector<CrossoverMask> masks;
  masks.reserve((std::size_t{1} << interior) - 1);
  for (std::size_t subset = 1; subset < (std::size_t{1} << interior); ++subset) {
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i < interior; ++i) {
      if (subset & (std::size_t{1} << i)) cuts.push_back(i + 1);
    }
    masks.emplace_back(length, std::move(cuts));
  }
  return masks;
}

// -------------------------------------------------------------- crossover

std::pair<Chromosome, Chromosome> crossover(const Chromosome& pa, const Chromosome& pb,
                                            const CrossoverMask& mask) {
  check_same_schema(pa, pb);
  check_mask(pa, mask);
  std::vector<Gene> a(pa.genes().begin(), pa.genes().end());
  std::vector<Gene> b(pb.genes().begin(), pb.genes().end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (mask.exchanged(k)) std::swap(a[k], b[k]);
  }
  return {Chromosome(pa.schema_ptr(), std::move(a)), Chromosome(pa.schema_ptr(), std::move(b))};
}

TriangleDecomposition decompose(const Chromosome& pa, const Chromosome& pb, const Chromosome& r,
                                const CrossoverMask& mask, int p) {
  check_same_schema(pa, pb);
  check_same_schema(pa, r);
  check_mask(pa, mask);
  if (p < 1) throw ConfigError("L_p exponent must be >= 1");
  TriangleDecomposition t;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    const double ta = pow_int(abs_diff(pa[k], r[k]), p);
    const double tb = pow_int(abs_diff(pb[k], r[k]), p);
    if (mask.exchanged(k)) {
      t.a2 += ta;
      t.b2 += tb;
    } else {
      t.a1 += ta;
      t.b1 += tb;
    }
  }
  return t;
}

double generalized_circumference(const Chromosome& x, const Chromosome& y, const Chromosome& z,
                                 int p) {
  return distance_pow(x, y, p) + distance_pow(y, z, p) + distance_pow(x, z, p);
}

// --------------------------------------------------------- classification

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::oopp: return "oopp";
    case Outcome::opop: return "opop";
    case Outcome::oppo: return "oppo";
    case Outcome::poop: return "poop";
    case Outcome::popo: return "popo";
    case Outcome::ppoo: return "ppoo";
    case Outcome::tie: return "tie";
  }
  return "?";
}

int table_row(Outcome outcome) {
  return outcome == Outcome::tie ? 0 : static_cast<int>(outcome) + 1;
}

Outcome classify_outcome(const Chromosome& pa, const Chromosome& pb, const Chromosome& oa,
                         const Chromosome& ob, const Chromosome& r, const Metric& metric) {
  struct Entry {
    double d;
    bool offspring;
  };
  std::array<Entry, 4> e{{{distance(pa, r, metric), false},
                          {distance(pb, r, metric), false},
                          {distance(oa, r, metric), true},
                          {distance(ob, r, metric), true}}};
  std::ranges::sort(e, {}, &Entry::d);
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i].d == e[i - 1].d) return Outcome::tie;
  }
  // Bit i set when the i-th nearest is an offspring.
  const unsigned code = (e[0].offspring ? 8u : 0u) | (e[1].offspring ? 4u : 0u) |
                        (e[2].offspring ? 2u : 0u) | (e[3].offspring ? 1u : 0u);
  switch (code) {
    case 0b1100: return Outcome::oopp;
    case 0b1010: return Outcome::opop;
    case 0b1001: return Outcome::oppo;
    case 0b0110: return Outcome::poop;
    case 0b0101: return Outcome::popo;
    case 0b0011: return Outcome::ppoo;
    default: break;
  }
  throw InputError("classify_outcome: expected two parents and two offspring");
}

// -------------------------------------------------------------- trade-off

double offspring_distance_tradeoff(double d1, double d2, double da, int p) {
  if (p < 1) throw ConfigError("L_p exponent must be >= 1");
  if (!(d1 > 0.0) || !(d2 > 0.0) || !(da > 0.0) || !std::isfinite(d1) || !std::isfinite(d2) ||
      !std::isfinite(da)) {
    throw InputError("trade-off distances must be positive and finite");
  }
  if (da == d1) return d2;

  // d1^p - da^p = (d1 - da) * sum_i d1^i da^(p-1-i); the factored form keeps
  // the sign of the difference exact.
  double poly = 0.0;
  for (int i = 0; i < p; ++i) poly += pow_int(d1, i) * pow_int(da, p - 1 - i);
  const double db_pow = pow_int(d2, p) + (d1 - da) * poly;
  if (db_pow < 0.0) {
    throw InputError("no offspring distance satisfies the conservation law for these inputs");
  }
  double db = p == 1 ? db_pow : p == 2 ? std::sqrt(db_pow) : std::pow(db_pow, 1.0 / p);
  if (da < d1 && db <= d2) db = std::nextafter(d2, std::numeric_limits<double>::infinity());
  if (da > d1 && db >= d2) db = std::nextafter(d2, 0.0);
  return db;
}

// ----------------------------------------------------------------- census

std::uint64_t OutcomeCensus::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

OutcomeCensus enumerate_outcomes(std::size_t bits) {
  if (bits < 2 || bits > 8) throw InputError("outcome census supports 2..8 bits");
  const auto schema = Schema::bits(bits);
  const std::size_t n = std::size_t{1} << bits;
  std::vector<Chromosome> points;
  points.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string s(bits, '0');
    for (std::size_t k = 0; k < bits; ++k) {
      if (v & (std::size_t{1} << (bits - 1 - k))) s[k] = '1';
    }
    points.push_back(Chromosome::from_bits(schema, s));
  }
  const auto masks = CrossoverMask::all(bits);
  const Metric metric = Metric::hamming();

  OutcomeCensus census;
  census.bits = bits;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (const auto& mask : masks) {
        const auto [oa, ob] = crossover(points[i], points[j], mask);
        for (const auto& r : points) {
          const Outcome o = classify_outcome(points[i], points[j], oa, ob, r, metric);
          ++census.counts[static_cast<std::size_t>(o)];
        }
      }
    }
  }
  return census;
}

}  // namespace gaspace
