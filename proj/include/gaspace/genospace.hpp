#pragma once

/// @file genospace.hpp
/// Points of the genotype space (chromosomes over an explicit locus schema)
/// and the distances defined on them: Hamming, L_p for finite integer p,
/// and L_inf.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaspace {

enum class GeneKind { bit, integer, real };

std::string_view to_string(GeneKind kind);

/// Kind and bounds of one gene position. Integer bounds are enforced; real
/// bounds only define the sampling domain used by initializers and mutation.
struct Locus {
  GeneKind kind = GeneKind::bit;
  std::int64_t int_min = 0;
  std::int64_t int_max = 1;
  double real_min = 0.0;
  double real_max = 1.0;

  static Locus bit() { return {}; }
  static Locus integer(std::int64_t lo, std::int64_t hi) {
    return {GeneKind::integer, lo, hi, 0.0, 1.0};
  }
  static Locus real(double lo, double hi) {
    return {GeneKind::real, 0, 1, lo, hi};
  }

  bool operator==(const Locus&) const = default;
};

/// Shared description of a chromosome layout. Chromosomes only combine with
/// chromosomes of an equal schema.
class Schema {
 public:
  Schema(std::string id, std::vector<Locus> loci);

  static std::shared_ptr<const Schema> bits(std::size_t n);
  static std::shared_ptr<const Schema> integers(std::size_t n, std::int64_t lo,
                                                std::int64_t hi);
  static std::shared_ptr<const Schema> reals(std::size_t n, double lo, double hi);

  const std::string& id() const noexcept { return id_; }
  std::size_t size() const noexcept { return loci_.size(); }
  const Locus& locus(std::size_t i) const { return loci_.at(i); }
  std::span<const Locus> loci() const noexcept { return loci_; }

  bool all_real() const noexcept;
  bool all_discrete() const noexcept;
  bool all_bits() const noexcept;

  bool operator==(const Schema&) const = default;

 private:
  std::string id_;
  std::vector<Locus> loci_;
};

using SchemaPtr = std::shared_ptr<const Schema>;

/// Discrete genes (bit, integer) hold the int64 alternative; real genes hold
/// the double alternative.
using Gene = std::variant<std::int64_t, double>;

/// Fixed-length, validated point of genotype space. Immutable.
class Chromosome {
 public:
  Chromosome(SchemaPtr schema, std::vector<Gene> genes);

  static Chromosome from_bits(SchemaPtr schema, std::string_view bits);
  static Chromosome from_ints(SchemaPtr schema, std::initializer_list<std::int64_t> values);
  static Chromosome from_ints(SchemaPtr schema, std::span<const std::int64_t> values);
  static Chromosome from_reals(SchemaPtr schema, std::initializer_list<double> values);
  static Chromosome from_reals(SchemaPtr schema, std::span<const double> values);

  const Schema& schema() const noexcept { return *schema_; }
  const SchemaPtr& schema_ptr() const noexcept { return schema_; }
  std::size_t size() const noexcept { return genes_.size(); }
  std::span<const Gene> genes() const noexcept { return genes_; }
  const Gene& operator[](std::size_t i) const { return genes_[i]; }

  /// Numeric value of locus i, widened to double.
  double value(std::size_t i) const;

  /// "10110" for all-bit chromosomes, "(1, 5)"-style tuple otherwise.
  std::string to_string() const;

  bool operator==(const Chromosome& other) const;

 private:
  SchemaPtr schema_;
  std::vector<Gene> genes_;
};

class Metric {
 public:
  enum class Kind { hamming, lp, linf };

  static Metric hamming() { return Metric{Kind::hamming, 0}; }
  static Metric lp(int p);
  static Metric linf() { return Metric{Kind::linf, 0}; }

  /// Accepts "hamming", "linf", "L<p>" / "l<p>".
  static Metric parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  /// Exponent for Lp; 0 for the other kinds.
  int p() const noexcept { return p_; }
  std::string name() const;

  bool operator==(const Metric&) const = default;

 private:
  Metric(Kind kind, int p) : kind_(kind), p_(p) {}
  Kind kind_;
  int p_;
};

/// Throws ConfigError when the metric is not defined on the schema
/// (Hamming needs equality-comparable loci, i.e. no real genes).
void check_metric(const Metric& metric, const Schema& schema);

/// Throws InputError unless both chromosomes share one schema.
void check_same_schema(const Chromosome& a, const Chromosome& b);

/// Distance in the given metric; Lp returns the rooted form.
double distance(const Chromosome& a, const Chromosome& b, const Metric& metric);

/// Sum over loci of |a_k - b_k|^p, without the root. Discrete schemas are
/// summed in integer arithmetic and converted once.
double distance_pow(const Chromosome& a, const Chromosome& b, int p);

/// Exact distance_pow for schemas without real loci. Throws
/// std::overflow_error if the sum does not fit in int64.
std::int64_t distance_pow_exact(const Chromosome& a, const Chromosome& b, int p);

}  // namespace gaspace
