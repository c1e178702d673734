#pragma once

/// @file selection.hpp
/// Selection curves: maps from fitness to probability of selection.
///
/// Soft curves (arctan and tanh quartile scalings, strictly increasing
/// explicit sequences) map into the open interval (0,1). Hard curves are
/// step functions at a threshold n0, which the adaptive variant sets to an
/// average of the current fitnesses.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gaspace {

enum class Direction { maximize, minimize };

Direction parse_direction(std::string_view name);
std::string_view to_string(Direction d);

/// Lower quartile, median and upper quartile of a fitness sample, plus the
/// scaling denominator (interquartile range, or 1 when that range is zero).
struct QuartileSummary {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double denom = 1.0;
};

/// Quartiles by linear interpolation between order statistics
/// (position h = (n-1) q over the sorted sample).
QuartileSummary quartiles(std::span<const double> fitnesses);

/// 1/2 + atan(2 (k - median) / denom) / pi; minimize flips the sign of the
/// argument. Never returns exactly 0 or 1.
double arctan_curve(double k, const QuartileSummary& q, Direction direction);

/// 1/2 + tanh(2 (k - median) / denom) / 2, evaluated as a logistic so the
/// lower tail keeps relative precision. Clamped away from 0 and 1.
double tanh_curve(double k, const QuartileSummary& q, Direction direction);

enum class Average { mean, median };

class SelectionCurve {
 public:
  enum class Kind { arctan_quartile, tanh_quartile, hard_threshold, explicit_sequence };

  static SelectionCurve arctan(QuartileSummary q, Direction d = Direction::maximize);
  static SelectionCurve tanh(QuartileSummary q, Direction d = Direction::maximize);
  /// 0 strictly below n0 and 1 at or above it (mirrored for minimize).
  static SelectionCurve hard(double n0, Direction d = Direction::maximize);
  /// Arbitrary map k -> c_k. `strictly_increasing` declares it soft; its
  /// values are range-checked on every evaluation.
  static SelectionCurve sequence(std::function<double(double)> c, std::string name,
                                 bool strictly_increasing);
  /// c_k = 1/2 + atan(k) / pi.
  static SelectionCurve arctan_sequence();
  /// c_k = c for every k.
  static SelectionCurve constant(double c);

  Kind kind() const noexcept { return kind_; }
  Direction direction() const noexcept { return direction_; }
  const std::string& name() const noexcept { return name_; }
  /// Strictly monotone into (0,1).
  bool soft() const noexcept { return soft_; }
  std::optional<QuartileSummary> summary() const { return summary_; }
  std::optional<double> threshold() const { return threshold_; }

  double operator()(double k) const;

 private:
  SelectionCurve() = default;

  Kind kind_ = Kind::explicit_sequence;
  Direction direction_ = Direction::maximize;
  std::string name_;
  bool soft_ = false;
  std::optional<QuartileSummary> summary_;
  std::optional<double> threshold_;
  std::function<double(double)> fn_;
};

/// Hard threshold whose n0 is the mean (or median) of `fitnesses`.
SelectionCurve adaptive_threshold(std::span<const double> fitnesses,
                                  Direction d = Direction::maximize,
                                  Average average = Average::mean);

/// Evaluates `curve` at fitness k. Throws InputError for non-finite k.
double select_probability(const SelectionCurve& curve, double k);

/// Curve families addressable by name from configuration files.
enum class CurveKind { arctan, tanh, hard, adaptive_hard };

/// "arctan", "tanh", "hard", "adaptive-hard".
CurveKind parse_curve_kind(std::string_view name);
std::string_view to_string(CurveKind kind);

struct CurveOptions {
  Direction direction = Direction::maximize;
  /// n0 for CurveKind::hard.
  double hard_threshold = 0.0;
  /// Average used by CurveKind::adaptive_hard.
  Average average = Average::mean;
};

/// Builds this generation's curve from its fitness values.
SelectionCurve build_curve(CurveKind kind, std::span<const double> fitnesses,
                           const CurveOptions& options = {});

}  // namespace gaspace
