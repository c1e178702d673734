#include "gaspace/genospace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gaspace/errors.hpp"

namespace gaspace {

namespace {

double pow_int(double base, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= base;
  return r;
}

std::int64_t checked_pow(std::int64_t base, int p) {
  std::int64_t r = 1;
  for (int i = 0; i < p; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) {
      throw std::overflow_error("distance_pow_exact: term overflows int64");
    }
  }
  return r;
}

void check_p(int p) {
  if (p < 1) throw ConfigError("L_p exponent must be >= 1, got " + std::to_string(p));
}

std::int64_t abs_diff(std::int64_t x, std::int64_t y) {
  std::int64_t d = 0;
  if (__builtin_sub_overflow(x, y, &d) || d == INT64_MIN) {
    throw std::overflow_error("integer gene difference overflows int64");
  }
  return d < 0 ? -d : d;
}

double abs_diff_value(const Gene& x, const Gene& y) {
  if (const auto* xi = std::get_if<std::int64_t>(&x)) {
    return static_cast<double>(abs_diff(*xi, std::get<std::int64_t>(y)));
  }
  return std::fabs(std::get<double>(x) - std::get<double>(y));
}

}  // namespace

std::string_view to_string(GeneKind kind) {
  switch (kind) {
    case GeneKind::bit: return "bit";
    case GeneKind::integer: return "integer";
    case GeneKind::real: return "real";
  }
  return "?";
}

// ---------------------------------------------------------------- Schema

Schema::Schema(std::string id, std::vector<Locus> loci)
    : id_(std::move(id)), loci_(std::move(loci)) {
  if (loci_.empty()) throw InputError("schema '" + id_ + "' has no loci");
  for (std::size_t i = 0; i < loci_.size(); ++i) {
    const Locus& l = loci_[i];
    switch (l.kind) {
      case GeneKind::bit:
        if (l.int_min != 0 || l.int_max != 1) {
          throw InputError("bit locus " + std::to_string(i) + " must have bounds [0,1]");
        }
        break;
      case GeneKind::integer:
        if (l.int_min > l.int_max) {
          throw InputError("integer locus " + std::to_string(i) + " has min > max");
        }
        break;
      case GeneKind::real:
        if (!std::isfinite(l.real_min) || !std::isfinite(l.real_max) ||
            l.real_min > l.real_max) {
          throw InputError("real locus " + std::to_string(i) + " has invalid bounds");
        }
        break;
    }
  }
}

SchemaPtr Schema::bits(std::size_t n) {
  return std::make_shared<const Schema>("bits" + std::to_string(n),
                                        std::vector<Locus>(n, Locus::bit()));
}

SchemaPtr Schema::integers(std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::ostringstream id;
  id << "int" << n << '[' << lo << ',' << hi << ']';
  return std::make_shared<const Schema>(id.str(),
                                        std::vector<Locus>(n, Locus::integer(lo, hi)));
}

SchemaPtr Schema::reals(std::size_t n, double lo, double hi) {
  std::ostringstream id;
  id << "real" << n << '[' << lo << ',' << hi << ']';
  return std::make_shared<const Schema>(id.str(), std::vector<Locus>(n, Locus::real(lo, hi)));
}

bool Schema::all_real() const noexcept {
  return std::ranges::all_of(loci_, [](const Locus& l) { return l.kind == GeneKind::real; });
}

bool Schema::all_discrete() const noexcept {
  return std::ranges::none_of(loci_, [](const Locus& l) { return l.kind == GeneKind::real; });
}

bool Schema::all_bits() const noexcept {
  return std::ranges::all_of(loci_, [](const Locus& l) { return l.kind == GeneKind::bit; });
}

// ------------------------------------------------------------ Chromosome

Chromosome::Chromosome(SchemaPtr schema, std::vector<Gene> genes)
    : schema_(std::move(schema)), genes_(std::move(genes)) {
  if (!schema_) throw InputError("chromosome without schema");
  if (genes_.size() != schema_->size()) {
    throw InputError("chromosome length " + std::to_string(genes_.size()) +
                     " does not match schema length " + std::to_string(schema_->size()));
  }
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    const Locus& l = schema_->locus(i);
    const Gene& g = genes_[i];
    if (l.kind == GeneKind::real) {
      const auto* v = std::get_if<double>(&g);
      if (v == nullptr) throw InputError("locus " + std::to_string(i) + " expects a real gene");
      if (!std::isfinite(*v)) {
        throw InputError("locus " + std::to_string(i) + " holds a non-finite real");
      }
    } else {
      const auto* v = std::get_if<std::int64_t>(&g);
      if (v == nullptr) {
        throw InputError("locus " + std::to_string(i) + " expects a " +
                         std::string(gaspace::to_string(l.kind)) + " gene");
      }
      if (*v < l.int_min || *v > l.int_max) {
        throw InputError("locus " + std::to_string(i) + " value " + std::to_string(*v) +
                         " outside [" + std::to_string(l.int_min) + ", " +
                         std::to_string(l.int_max) + "]");
      }
    }
  }
}

Chromosome Chromosome::from_bits(SchemaPtr schema, std::string_view bits) {
  std::vector<Gene> genes;
  genes.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("bit string may only contain 0 and 1");
    genes.emplace_back(std::int64_t{c == '1'});
  }
  return Chromosome(std::move(schema), std::move(genes));
}

Chromosome Chromosome::from_ints(SchemaPtr schema, std::initializer_list<std::int64_t> values) {
  return from_ints(std::move(schema), std::span<const std::int64_t>(values.begin(), values.size()));
}

Chromosome Chromosome::from_ints(SchemaPtr schema, std::span<const std::int64_t> values) {
  return Chromosome(std::move(schema), std::vector<Gene>(values.begin(), values.end()));
}

Chromosome Chromosome::from_reals(SchemaPtr schema, std::initializer_list<double> values) {
  return from_reals(std::move(schema), std::span<const double>(values.begin(), values.size()));
}

Chromosome Chromosome::from_reals(SchemaPtr schema, std::span<const double> values) {
  return Chromosome(std::move(schema), std::vector<Gene>(values.begin(), values.end()));
}

double Chromosome::value(std::size_t i) const {
  const Gene& g = genes_.at(i);
  if (const auto* v = std::get_if<std::int64_t>(&g)) return static_cast<double>(*v);
  return std::get<double>(g);
}

std::string Chromosome::to_string() const {
  std::string out;
  if (schema_->all_bits()) {
    for (const Gene& g : genes_) out += std::get<std::int64_t>(g) ? '1' : '0';
    return out;
  }
  out = "(";
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (i) out += ", ";
    char buf[32];
    auto res = std::visit(
        [&](auto v) { return std::to_chars(buf, buf + sizeof buf, v); }, genes_[i]);
    out.append(buf, res.ptr);
  }
  out += ')';
  return out;
}

bool Chromosome::operator==(const Chromosome& other) const {
  if (schema_ != other.schema_ && !(*schema_ == *other.schema_)) return false;
  return genes_ == other.genes_;
}

// ---------------------------------------------------------------- Metric

Metric Metric::lp(int p) {
  check_p(p);
  return Metric{Kind::lp, p};
}

Metric Metric::parse(std::string_view name) {
  if (name == "hamming" || name == "Hamming") return hamming();
  if (name == "linf" || name == "Linf" || name == "Linfinity") return linf();
  if (name.size() >= 2 && (name[0] == 'L' || name[0] == 'l')) {
    int p = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), p);
    if (ec == std::errc{} && ptr == name.data() + name.size()) return lp(p);
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::string Metric::name() const {
  switch (kind_) {
    case Kind::hamming: return "hamming";
    case Kind::lp: return "L" + std::to_string(p_);
    case Kind::linf: return "Linf";
  }
  return "?";
}

void check_metric(const Metric& metric, const Schema& schema) {
  if (metric.kind() == Metric::Kind::hamming && !schema.all_discrete()) {
    throw ConfigError("Hamming distance is undefined on schema '" + schema.id() +
                      "' with real loci");
  }
}

void check_same_schema(const Chromosome& a, const Chromosome& b) {
  if (a.schema_ptr() != b.schema_ptr() && !(a.schema() == b.schema())) {
    throw InputError("schema mismatch: '" + a.schema().id() + "' vs '" + b.schema().id() + "'");
  }
}

// ------------------------------------------------------------- distances

double distance(const Chromosome& a, const Chromosome& b, const Metric& metric) {
  check_same_schema(a, b);
  check_metric(metric, a.schema());
  const auto ga = a.genes();
  const auto gb = b.genes();
  switch (metric.kind()) {
    case Metric::Kind::hamming: {
      std::size_t count = 0;
      for (std::size_t k = 0; k < ga.size(); ++k) count += ga[k] != gb[k];
      return static_cast<double>(count);
    }
    case Metric::Kind::linf: {
      double m = 0.0;
      for (std::size_t k = 0; k < ga.size(); ++k) m = std::max(m, abs_diff_value(ga[k], gb[k]));
      return m;
    }
    case Metric::Kind::lp: {
      const double s = distance_pow(a, b, metric.p());
      switch (metric.p()) {
        case 1: return s;
        case 2: return std::sqrt(s);
        case 3: return std::cbrt(s);
        default: return std::pow(s, 1.0 / metric.p());
      }
    }
  }
  return 0.0;
}

double distance_pow(const Chromosome& a, const Chromosome& b, int p) {
  check_same_schema(a, b);
  check_p(p);
  if (a.schema().all_discrete()) return static_cast<double>(distance_pow_exact(a, b, p));
  const auto ga = a.genes();
  const auto gb = b.genes();
  double s = 0.0;
  for (std::size_t k = 0; k < ga.size(); ++k) s += pow_int(abs_diff_value(ga[k], gb[k]), p);
  return s;
}

std::int64_t distance_pow_exact(const Chromosome& a, const Chromosome& b, int p) {
  check_same_schema(a, b);
  check_p(p);
  if (!a.schema().all_discrete()) {
    throw ConfigError("exact distance_pow requires a schema without real loci");
  }
  const auto ga = a.genes();
  const auto gb = b.genes();
  std::int64_t s = 0;
  for (std::size_t k = 0; k < ga.size(); ++k) {
    const std::int64_t term =
        checked_pow(abs_diff(std::get<std::int64_t>(ga[k]), std::get<std::int64_t>(gb[k])), p);
    if (__builtin_add_overflow(s, term, &s)) {
      throw std::overflow_error("distance_pow_exact: sum overflows int64");
    }
  }
  return s;
}

}  // namespace gaspace
