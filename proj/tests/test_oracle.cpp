#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rhop/oracle.hpp"

using namespace rhop;

TEST(Discretize, MassOfUKind) {
  const WeightSpec spec({Interval(-1, 1)}, {ChebKind::U});
  const auto dm = discretize(spec, 4);
  EXPECT_EQ(dm.size(), 4u);
  EXPECT_NEAR(dm.mass(), pi / 2, 1e-14);
}

TEST(Discretize, NodesSortedPerBand) {
  const WeightSpec spec({Interval(-1.8, -1), Interval(2, 3)}, {ChebKind::T, ChebKind::V});
  const auto dm = discretize(spec, 9);
  ASSERT_EQ(dm.size(), 18u);
  EXPECT_TRUE(std::is_sorted(dm.nodes.begin(), dm.nodes.end()));
  for (std::size_t i = 0; i < 9; ++i) EXPECT_TRUE(spec.bands[0].contains(dm.nodes[i]));
  for (std::size_t i = 9; i < 18; ++i) EXPECT_TRUE(spec.bands[1].contains(dm.nodes[i]));
  for (double w : dm.weights) EXPECT_GT(w, 0.0);
}

TEST(Discretize, ModifiedWeightMass) {
  const ScalingFunction h{{factor::ExpSum{{{1.0, 1.0}, {1.0, 0.0}}}, factor::Rational{{1.0}, {4.0, 0.0, 1.0}}}};
  const WeightSpec spec({Interval(-1, 1)}, {ChebKind::U}, {h});
  // int h(x) sqrt(1 - x^2) dx = (pi / 2) <h>_U with <.>_U the unit-mass U average.
  const cplx avg = band_integral([&](double x) { return h(x) * (1.0 - x * x) * 2.0; }, Interval(-1, 1));
  EXPECT_NEAR(discretize(spec, 64).mass(), (pi / 2) * avg.real(), 1e-12);
}

TEST(Tridiagonalize, ClassicalOperators) {
  const Interval iv(-1, 1);
  const double s = std::sqrt(0.5);
  struct Case {
    ChebKind kind;
    double a0;
    double b0;
  };
  for (const auto& c : {Case{ChebKind::T, 0.0, s}, Case{ChebKind::U, 0.0, 0.5}, Case{ChebKind::V, 0.5, 0.5},
                        Case{ChebKind::W, -0.5, 0.5}}) {
    const auto seg = tridiagonalize(discretize(WeightSpec({iv}, {c.kind}), 200), 50);
    ASSERT_EQ(seg.size(), 50u);
    EXPECT_NEAR(seg.a[0], c.a0, 1e-12);
    EXPECT_NEAR(seg.b[0], c.b0, 1e-12);
    for (std::size_t n = 1; n < 50; ++n) {
      EXPECT_NEAR(seg.a[n], 0.0, 1e-12) << kind_letter(c.kind) << n;
      EXPECT_NEAR(seg.b[n], 0.5, 1e-12) << kind_letter(c.kind) << n;
    }
  }
}

TEST(Tridiagonalize, Preconditions) {
  const auto dm = discretize(WeightSpec({Interval(-1, 1)}, {ChebKind::T}), 8);
  EXPECT_THROW(tridiagonalize(dm, 8), DomainError);
  EXPECT_THROW(tridiagonalize(dm, 0), DomainError);
  EXPECT_NO_THROW(tridiagonalize(dm, 7));
}

TEST(Tridiagonalize, BreakdownOnTinySupport) {
  DiscreteMeasure dm{{0.0, 1e-16, 1.0}, {1.0, 1.0, 1.0}};
  EXPECT_THROW(tridiagonalize(dm, 2), ConvergenceError);
}

TEST(AdaptiveOracle, ExactRuleConvergesAtFirstDoubling) {
  const auto r = adaptive_oracle(WeightSpec({Interval(-1, 1)}, {ChebKind::U}), 20, 1e-13);
  EXPECT_EQ(r.m_per_band, 80u);
  EXPECT_LE(r.change, 1e-13);
}

TEST(AdaptiveOracle, TwoBandStabilizes) {
  const WeightSpec spec({Interval(-1.8, -1), Interval(2, 3)}, {ChebKind::T, ChebKind::T});
  const auto r = adaptive_oracle(spec, 51, 1e-11);
  EXPECT_EQ(r.segment.size(), 51u);
  for (double b : r.segment.b) EXPECT_GT(b, 0.0);
}

TEST(AdaptiveOracle, ScaledWeightNeedsMoreNodes) {
  const WeightSpec spec({Interval(-1, 1)}, {ChebKind::U});
  const auto r0 = adaptive_oracle(spec, 11, 1e-13);
  const auto r2 = adaptive_oracle(spec.scaled_exp(2.0), 11, 1e-13);
  EXPECT_GE(r2.m_per_band, r0.m_per_band);
  EXPECT_THROW(adaptive_oracle(spec, 11, 1e-15), DomainError);
}
