#include "gaspace/selection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaspace/errors.hpp"
#include "property.hpp"

namespace gaspace {
namespace {

using testing::for_all;

TEST(Quartiles, LinearInterpolation) {
  const std::vector<double> f{4, 1, 3, 2, 5};
  const auto q = quartiles(f);
  EXPECT_DOUBLE_EQ(q.q1, 2.0);
  EXPECT_DOUBLE_EQ(q.median, 3.0);
  EXPECT_DOUBLE_EQ(q.q3, 4.0);
  EXPECT_DOUBLE_EQ(q.denom, 2.0);

  const std::vector<double> even{1, 2, 3, 4};
  const auto e = quartiles(even);
  EXPECT_DOUBLE_EQ(e.q1, 1.75);
  EXPECT_DOUBLE_EQ(e.median, 2.5);
  EXPECT_DOUBLE_EQ(e.q3, 3.25);
}

TEST(Quartiles, ZeroSpreadUsesUnitDenominator) {
  const std::vector<double> flat{7, 7, 7, 7};
  const auto q = quartiles(flat);
  EXPECT_EQ(q.denom, 1.0);
  EXPECT_EQ(q.median, 7.0);
  const std::vector<double> single{3.5};
  EXPECT_EQ(quartiles(single).denom, 1.0);
}

TEST(Quartiles, RejectsBadInput) {
  EXPECT_THROW(quartiles(std::vector<double>{}), InputError);
  EXPECT_THROW(quartiles(std::vector<double>{1.0, std::nan("")}), InputError);
  EXPECT_THROW(quartiles(std::vector<double>{1.0, INFINITY}), InputError);
}

const QuartileSummary kUnitSpread{0.0, 1.0, 2.0, 2.0};

TEST(Curves, ArctanValues) {
  EXPECT_DOUBLE_EQ(arctan_curve(1.0, kUnitSpread, Direction::maximize), 0.5);
  EXPECT_DOUBLE_EQ(arctan_curve(2.0, kUnitSpread, Direction::maximize), 0.75);
  EXPECT_DOUBLE_EQ(arctan_curve(0.0, kUnitSpread, Direction::maximize), 0.25);
  EXPECT_DOUBLE_EQ(arctan_curve(2.0, kUnitSpread, Direction::minimize), 0.25);
}

TEST(Curves, TanhValues) {
  EXPECT_DOUBLE_EQ(tanh_curve(1.0, kUnitSpread, Direction::maximize), 0.5);
  EXPECT_NEAR(tanh_curve(2.0, kUnitSpread, Direction::maximize), 0.5 + std::tanh(1.0) / 2, 1e-15);
  EXPECT_NEAR(tanh_curve(2.0, kUnitSpread, Direction::maximize), 0.8808, 1e-4);
  EXPECT_NEAR(tanh_curve(0.0, kUnitSpread, Direction::maximize), 0.5 - std::tanh(1.0) / 2, 1e-15);
}

TEST(Curves, TanhIsSharperAboveTheMedian) {
  for (double k : {1.25, 1.5, 2.0, 3.0}) {
    EXPECT_GT(tanh_curve(k, kUnitSpread, Direction::maximize),
              arctan_curve(k, kUnitSpread, Direction::maximize));
  }
}

TEST(Curves, StayStrictlyInsideUnitInterval) {
  for (double k : {-1e300, -1e12, 1e12, 1e300}) {
    for (auto d : {Direction::maximize, Direction::minimize}) {
      for (double c : {arctan_curve(k, kUnitSpread, d), tanh_curve(k, kUnitSpread, d)}) {
        EXPECT_GT(c, 0.0);
        EXPECT_LT(c, 1.0);
      }
    }
  }
}

struct CurveCase {
  std::vector<double> fitness;
  double a, b;
  Direction d;
};

TEST(CurveProperties, MonotoneAndMedianIsFixedPoint) {
  const auto gen = [](Rng& rng) {
    CurveCase c;
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 40));
    for (std::size_t i = 0; i < n; ++i) c.fitness.push_back(uniform_real(rng, -50, 50));
    c.a = uniform_real(rng, -60, 60);
    c.b = uniform_real(rng, -60, 60);
    c.d = uniform01(rng) < 0.5 ? Direction::maximize : Direction::minimize;
    return c;
  };
  EXPECT_TRUE(for_all(3000, 50, gen, [](const CurveCase& c) {
    const auto q = quartiles(c.fitness);
    for (const auto& curve : {SelectionCurve::arctan(q, c.d), SelectionCurve::tanh(q, c.d)}) {
      if (curve(q.median) != 0.5) return ::testing::AssertionFailure() << curve.name() << " median";
      const double lo = std::min(c.a, c.b), hi = std::max(c.a, c.b);
      const double clo = curve(lo), chi = curve(hi);
      const bool ok = c.d == Direction::maximize ? clo <= chi : clo >= chi;
      if (!ok) return ::testing::AssertionFailure() << curve.name() << " not monotone";
      if (!(clo > 0 && clo < 1 && chi > 0 && chi < 1)) return ::testing::AssertionFailure() << "range";
      // Mirror symmetry around the median.
      const double delta = hi - q.median;
      if (std::abs(curve(q.median + delta) + curve(q.median - delta) - 1.0) > 1e-12) {
        return ::testing::AssertionFailure() << curve.name() << " not symmetric";
      }
    }
    return ::testing::AssertionSuccess();
  }));
}

TEST(CurveProperties, StrictlyIncreasingAroundTheMedian) {
  const std::vector<double> f{1, 2, 3, 4, 5, 6, 7};
  const auto q = quartiles(f);
  const auto a = SelectionCurve::arctan(q);
  const auto t = SelectionCurve::tanh(q);
  for (double k = -5; k < 15; k += 0.25) {
    EXPECT_LT(a(k), a(k + 0.25));
    EXPECT_LT(t(k), t(k + 0.25));
  }
}

TEST(CurveProperties, DegeneratePopulationGivesHalf) {
  const std::vector<double> flat(10, 3.0);
  const auto curve = build_curve(CurveKind::arctan, flat);
  EXPECT_EQ(curve(3.0), 0.5);
  EXPECT_DOUBLE_EQ(curve(3.5), 0.75);
}

TEST(HardThreshold, StepAtThreshold) {
  const auto h = SelectionCurve::hard(5.0);
  EXPECT_EQ(h(4.999), 0.0);
  EXPECT_EQ(h(5.0), 1.0);
  EXPECT_EQ(h(100.0), 1.0);
  EXPECT_FALSE(h.soft());
  EXPECT_EQ(h.threshold(), 5.0);
  const auto m = SelectionCurve::hard(5.0, Direction::minimize);
  EXPECT_EQ(m(5.0), 1.0);
  EXPECT_EQ(m(5.001), 0.0);
  EXPECT_THROW(SelectionCurve::hard(NAN), ConfigError);
}

TEST(AdaptiveThreshold, UsesMeanOrMedian) {
  const std::vector<double> f{1, 2, 3, 10};
  EXPECT_EQ(adaptive_threshold(f).threshold(), 4.0);
  EXPECT_EQ(adaptive_threshold(f, Direction::maximize, Average::median).threshold(), 2.5);
  const auto curve = build_curve(CurveKind::adaptive_hard, f);
  EXPECT_EQ(curve(3.0), 0.0);
  EXPECT_EQ(curve(10.0), 1.0);
}

TEST(Sequence, ArctanSequenceValues) {
  const auto s = SelectionCurve::arctan_sequence();
  EXPECT_TRUE(s.soft());
  EXPECT_DOUBLE_EQ(s(0.0), 0.5);
  EXPECT_DOUBLE_EQ(s(1.0), 0.75);
  EXPECT_DOUBLE_EQ(s(-1.0), 0.25);
  EXPECT_NEAR(s(-1e6), 1.0 / (std::numbers::pi * 1e6), 1e-18);
  for (int k = -50; k < 50; ++k) EXPECT_LT(s(k), s(k + 1));
}

TEST(Sequence, RangeIsEnforced) {
  const auto bad = SelectionCurve::sequence([](double k) { return k; }, "identity", true);
  EXPECT_DOUBLE_EQ(bad(0.5), 0.5);
  EXPECT_THROW(bad(1.0), ConfigError);
  EXPECT_THROW(bad(-0.5), ConfigError);
  EXPECT_THROW(SelectionCurve::sequence({}, "none", true), ConfigError);
  EXPECT_THROW(SelectionCurve::constant(1.5), ConfigError);
  EXPECT_EQ(SelectionCurve::constant(0.3)(1234.0), 0.3);
  EXPECT_FALSE(SelectionCurve::constant(0.3).soft());
}

TEST(Sequence, NonFiniteFitnessRejected) {
  const auto s = SelectionCurve::arctan_sequence();
  EXPECT_THROW(s(NAN), InputError);
  EXPECT_THROW(select_probability(s, INFINITY), InputError);
}

TEST(Parsing, NamesRoundTrip) {
  for (auto k : {CurveKind::arctan, CurveKind::tanh, CurveKind::hard, CurveKind::adaptive_hard}) {
    EXPECT_EQ(parse_curve_kind(to_string(k)), k);
  }
  EXPECT_THROW(parse_curve_kind("sigmoid"), ConfigError);
  EXPECT_EQ(parse_direction("min"), Direction::minimize);
  EXPECT_EQ(parse_direction("maximize"), Direction::maximize);
  EXPECT_THROW(parse_direction("sideways"), ConfigError);
}

TEST(BuildCurve, HardUsesConfiguredThreshold) {
  const std::vector<double> f{1, 2, 3};
  CurveOptions opt;
  opt.hard_threshold = 2.0;
  opt.direction = Direction::minimize;
  const auto c = build_curve(CurveKind::hard, f, opt);
  EXPECT_EQ(c(2.0), 1.0);
  EXPECT_EQ(c(3.0), 0.0);
}

}  // namespace
}  // namespace gaspace
