#pragma once

/// @file crossover.hpp
/// Point crossover and the triangle geometry around it: per-segment
/// decomposition of distances to a reference chromosome, the generalized
/// circumference, outcome classification and the offspring distance
/// trade-off.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gaspace/genospace.hpp"
#include "gaspace/random.hpp"

namespace gaspace {

/// k-point crossover pattern over N loci. A cut point c (1 <= c <= N-1)
/// separates locus c-1 from locus c; loci in odd-numbered segments are
/// exchanged between the parents.
class CrossoverMask {
 public:
  CrossoverMask(std::size_t length, std::vector<std::size_t> cut_points);

  static CrossoverMask single_point(std::size_t length, std::size_t cut) {
    return CrossoverMask(length, {cut});
  }
  /// k distinct cut points drawn uniformly from 1..length-1.
  static CrossoverMask random(std::size_t length, std::size_t k, Rng& rng);
  /// Every mask with at least one cut, in lexicographic order of cut-subset bits.
  static std::vector<CrossoverMask> all(std::size_t length);

  std::size_t length() const noexcept { return exchanged_.size(); }
  std::span<const std::size_t> cut_points() const noexcept { return cuts_; }
  bool exchanged(std::size_t locus) const { return exchanged_.at(locus) != 0; }

 private:
  std::vector<std::size_t> cuts_;
  std::vector<char> exchanged_;
};

/// Offspring (o_a, o_b): o_a keeps parent a outside exchanged loci and takes
/// parent b inside them; o_b is the complement.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& pa, const Chromosome& pb,
                                            const CrossoverMask& mask);

/// Per-segment p-th power distances to a reference r. a1/b1 sum over kept
/// loci, a2/b2 over exchanged loci, so that
///   d^p(pa,r) = a1 + a2,  d^p(pb,r) = b1 + b2,
///   d^p(oa,r) = a1 + b2,  d^p(ob,r) = b1 + a2.
struct TriangleDecomposition {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

TriangleDecomposition decompose(const Chromosome& pa, const Chromosome& pb, const Chromosome& r,
                                const CrossoverMask& mask, int p);

/// d^p(x,y) + d^p(y,z) + d^p(x,z).
double generalized_circumference(const Chromosome& x, const Chromosome& y, const Chromosome& z,
                                 int p);

/// Ordering of two parents (p) and two offspring (o) by distance to a
/// reference, nearest first. Any coincident distance yields `tie`.
enum class Outcome : std::uint8_t { oopp, opop, oppo, poop, popo, ppoo, tie };

inline constexpr std::array<Outcome, 7> kAllOutcomes{Outcome::oopp, Outcome::opop, Outcome::oppo,
                                                     Outcome::poop, Outcome::popo, Outcome::ppoo,
                                                     Outcome::tie};

std::string_view to_string(Outcome outcome);
/// Row number in the classic outcome table (1..6); 0 for `tie`.
int table_row(Outcome outcome);

Outcome classify_outcome(const Chromosome& pa, const Chromosome& pb, const Chromosome& oa,
                         const Chromosome& ob, const Chromosome& r, const Metric& metric);

/// Solves d1^p + d2^p = da^p + db^p for db. Requires d1, d2, da > 0 and a
/// nonnegative result under the root. The result is rounded toward the
/// exact answer's side of d2: da < d1 gives db > d2, da > d1 gives db < d2,
/// da == d1 gives db == d2.
double offspring_distance_tradeoff(double d1, double d2, double da, int p);

/// Outcome counts over an exhaustive bit-space enumeration.
struct OutcomeCensus {
  std::size_t bits = 0;
  std::array<std::uint64_t, kAllOutcomes.size()> counts{};

  std::uint64_t operator[](Outcome o) const { return counts[static_cast<std::size_t>(o)]; }
  std::uint64_t total() const;
};

/// Every unordered pair of distinct parents, every mask and every reference
/// over all chromosomes of `bits` bits (2 <= bits <= 8), classified under
/// Hamming distance.
OutcomeCensus enumerate_outcomes(std::size_t bits);

}  // namespace gaspace
