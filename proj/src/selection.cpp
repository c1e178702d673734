#include "gaspace/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "gaspace/errors.hpp"

namespace gaspace {

namespace {

constexpr double kMinProbability = std::numeric_limits<double>::denorm_min();
const double kMaxProbability = std::nextafter(1.0, 0.0);

double open_unit(double c) { return std::clamp(c, kMinProbability, kMaxProbability); }

double scaled_argument(double k, const QuartileSummary& q, Direction direction) {
  if (!std::isfinite(k)) throw InputError("fitness must be finite");
  const double x = 2.0 * (k - q.median) / q.denom;
  return direction == Direction::maximize ? x : -x;
}

void check_fitnesses(std::span<const double> fitnesses) {
  if (fitnesses.empty()) throw InputError("fitness list is empty");
  for (double f : fitnesses) {
    if (!std::isfinite(f)) throw InputError("fitness values must be finite");
  }
}

}  // namespace

Direction parse_direction(std::string_view name) {
  if (name == "maximize" || name == "max") return Direction::maximize;
  if (name == "minimize" || name == "min") return Direction::minimize;
  throw ConfigError("unknown direction '" + std::string(name) + "'");
}

std::string_view to_string(Direction d) {
  return d == Direction::maximize ? "maximize" : "minimize";
}

QuartileSummary quartiles(std::span<const double> fitnesses) {
  check_fitnesses(fitnesses);
  std::vector<double> sorted(fitnesses.begin(), fitnesses.end());
  std::ranges::sort(sorted);
  const auto at = [&](double q) {
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size() || frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
  };
  QuartileSummary q{at(0.25), at(0.5), at(0.75), 1.0};
  const double iqr = q.q3 - q.q1;
  q.denom = iqr > 0.0 ? iqr : 1.0;
  return q;
}

double arctan_curve(double k, const QuartileSummary& q, Direction direction) {
  const double x = scaled_argument(k, q, direction);
  // Below x = -1 use 1/2 + atan(x)/pi = atan(-1/x)/pi to avoid cancellation.
  const double c = x < -1.0 ? std::atan(-1.0 / x) / std::numbers::pi
                            : 0.5 + std::atan(x) / std::numbers::pi;
  return open_unit(c);
}

double tanh_curve(double k, const QuartileSummary& q, Direction direction) {
  const double x = scaled_argument(k, q, direction);
  return open_unit(1.0 / (1.0 + std::exp(-2.0 * x)));
}

// ------------------------------------------------------- SelectionCurve

SelectionCurve SelectionCurve::arctan(QuartileSummary q, Direction d) {
  SelectionCurve c;
  c.kind_ = Kind::arctan_quartile;
  c.direction_ = d;
  c.name_ = "arctan";
  c.soft_ = true;
  c.summary_ = q;
  c.fn_ = [q, d](double k) { return arctan_curve(k, q, d); };
  return c;
}

SelectionCurve SelectionCurve::tanh(QuartileSummary q, Direction d) {
  SelectionCurve c;
  c.kind_ = Kind::tanh_quartile;
  c.direction_ = d;
  c.name_ = "tanh";
  c.soft_ = true;
  c.summary_ = q;
  c.fn_ = [q, d](double k) { return tanh_curve(k, q, d); };
  return c;
}

SelectionCurve SelectionCurve::hard(double n0, Direction d) {
  if (!std::isfinite(n0)) throw ConfigError("hard threshold must be finite");
  SelectionCurve c;
  c.kind_ = Kind::hard_threshold;
  c.direction_ = d;
  c.name_ = "hard";
  c.threshold_ = n0;
  c.fn_ = [n0, d](double k) {
    const bool pass = d == Direction::maximize ? k >= n0 : k <= n0;
    return pass ? 1.0 : 0.0;
  };
  return c;
}

SelectionCurve SelectionCurve::sequence(std::function<double(double)> fn, std::string name,
                                        bool strictly_increasing) {
  if (!fn) throw ConfigError("explicit sequence needs a function");
  SelectionCurve c;
  c.kind_ = Kind::explicit_sequence;
  c.name_ = std::move(name);
  c.soft_ = strictly_increasing;
  c.fn_ = [fn = std::move(fn), strictly_increasing, label = c.name_](double k) {
    const double v = fn(k);
    const bool ok = strictly_increasing ? (v > 0.0 && v < 1.0) : (v >= 0.0 && v <= 1.0);
    if (!ok) throw ConfigError("sequence '" + label + "' left its allowed range");
    return v;
  };
  return c;
}

SelectionCurve SelectionCurve::arctan_sequence() {
  return sequence(
      [](double k) {
        const double c = k < -1.0 ? std::atan(-1.0 / k) / std::numbers::pi
                                  : 0.5 + std::atan(k) / std::numbers::pi;
        return open_unit(c);
      },
      "arctan-sequence", true);
}

SelectionCurve SelectionCurve::constant(double value) {
  if (!(value >= 0.0 && value <= 1.0)) throw ConfigError("constant curve must lie in [0,1]");
  return sequence([value](double) { return value; }, "constant", false);
}

double SelectionCurve::operator()(double k) const {
  if (!std::isfinite(k)) throw InputError("fitness must be finite");
  return fn_(k);
}

SelectionCurve adaptive_threshold(std::span<const double> fitnesses, Direction d,
                                  Average average) {
  check_fitnesses(fitnesses);
  double n0 = 0.0;
  if (average == Average::median) {
    n0 = quartiles(fitnesses).median;
  } else {
    n0 = std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0) /
         static_cast<double>(fitnesses.size());
  }
  return SelectionCurve::hard(n0, d);
}

double select_probability(const SelectionCurve& curve, double k) { return curve(k); }

CurveKind parse_curve_kind(std::string_view name) {
  if (name == "arctan") return CurveKind::arctan;
  if (name == "tanh") return CurveKind::tanh;
  if (name == "hard") return CurveKind::hard;
  if (name == "adaptive-hard") return CurveKind::adaptive_hard;
  throw ConfigError("unknown selection curve '" + std::string(name) + "'");
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::arctan: return "arctan";
    case CurveKind::tanh: return "tanh";
    case CurveKind::hard: return "hard";
    case CurveKind::adaptive_hard: return "adaptive-hard";
  }
  return "?";
}

SelectionCurve build_curve(CurveKind kind, std::span<const double> fitnesses,
                           const CurveOptions& options) {
  switch (kind) {
    case CurveKind::arctan: return SelectionCurve::arctan(quartiles(fitnesses), options.direction);
    case CurveKind::tanh: return SelectionCurve::tanh(quartiles(fitnesses), options.direction);
    case CurveKind::hard: return SelectionCurve::hard(options.hard_threshold, options.direction);
    case CurveKind::adaptive_hard:
      return adaptive_threshold(fitnesses, options.direction, options.average);
  }
  throw ConfigError("unknown selection curve kind");
}

}  // namespace gaspace
