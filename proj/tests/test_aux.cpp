#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "rhop/aux_fun.hpp"

using namespace rhop;

namespace {

std::vector<std::vector<Interval>> band_sets() {
  return {
      {Interval(-1.8, -1), Interval(2, 3)},
      {Interval(-3, -2), Interval(2, 3)},
      {Interval(-3.2, -2.2), Interval(0.1, 1.1), Interval(2, 3), Interval(3.5, 4)},
      {Interval(-4, -3), Interval(-2, -1), Interval(2, 3)},
  };
}

}  // namespace

TEST(HSystem, RowSums) {
  for (const auto& bands : band_sets()) {
    const auto hs = build_hsystem(bands);
    const int g = hs.genus();
    for (int k = 0; k <= g; ++k) {
      cplx s = 0.0;
      for (int j = 0; j <= g; ++j) s += hs.matrix(k, j);
      if (k < g) {
        EXPECT_NEAR(std::abs(s), 0.0, 1e-11) << k;
      } else {
        EXPECT_NEAR(std::abs(s), pi, 1e-11);
      }
    }
    EXPECT_NEAR(hs.kappa, pi, 1e-12);
  }
}

TEST(HSystem, SingleBandHasNoGaps) {
  const auto hs = build_hsystem({Interval(-1, 1)});
  EXPECT_EQ(hs.genus(), 0);
  const auto gd = build_green({Interval(-1, 1)});
  const auto a = solve_aux(hs, gd, 5);
  ASSERT_EQ(a.A.size(), 1u);
  EXPECT_NEAR(a.A[0], 0.0, 1e-15);
  EXPECT_NEAR(std::abs(eval_h(hs, a, cplx(0.2, 0.4))), 0.0, 1e-15);
}

TEST(AuxFun, WrapAngle) {
  EXPECT_NEAR(wrap_angle(3 * pi + 0.1), -pi + 0.1, 1e-14);
  EXPECT_NEAR(wrap_angle(pi), pi, 0.0);
  EXPECT_NEAR(wrap_angle(-pi), pi, 1e-15);
  EXPECT_NEAR(wrap_angle(0.5), 0.5, 0.0);
}

TEST(AuxFun, BandAndGapJumps) {
  for (const auto& bands : band_sets()) {
    const auto gd = build_green(bands);
    const auto hs = build_hsystem(gd);
    const auto gaps = gaps_of(bands);
    for (int n : {1, 2, 7, 100, 1000}) {
      const auto a = solve_aux(hs, gd, n);
      for (std::size_t j = 0; j < bands.size(); ++j) {
        for (double t : {-0.8, 0.05, 0.9}) {
          const double x = bands[j].from_unit(t);
          const cplx s = eval_h(hs, a, x, Side::Plus) + eval_h(hs, a, x, Side::Minus);
          EXPECT_NEAR(std::abs(s - a.A[j]), 0.0, 1e-11) << n << " band " << j;
        }
      }
      for (std::size_t l = 0; l < gaps.size(); ++l) {
        for (double t : {-0.7, 0.3}) {
          const double x = gaps[l].from_unit(t);
          const cplx hj = eval_h(hs, a, x, Side::Plus) - eval_h(hs, a, x, Side::Minus);
          EXPECT_NEAR(std::abs(hj - a.nu[l]), 0.0, 1e-11);
          // e^{2h - 2ng} is continuous across the gap.
          const cplx e = std::exp(2.0 * hj - 2.0 * static_cast<double>(n) * gd.deltas[l]);
          EXPECT_NEAR(std::abs(e - 1.0), 0.0, 1e-9) << n;
        }
      }
    }
  }
}

TEST(AuxFun, DecaysAtInfinity) {
  for (const auto& bands : band_sets()) {
    const auto gd = build_green(bands);
    const auto hs = build_hsystem(gd);
    for (int n : {1, 5, 33}) {
      const auto a = solve_aux(hs, gd, n);
      auto probe = [&](cplx z) { return 0.5 * (z * eval_h(hs, a, z) - z * eval_h(hs, a, -z)); };
      // Remaining error is h3 / z^2: quartering |z| cuts it by 16.
      const double e1 = std::abs(probe(cplx(12.0, 9.0)) - a.h1);
      const double e2 = std::abs(probe(cplx(48.0, 36.0)) - a.h1);
      EXPECT_LT(e2, e1 / 10.0 + 1e-10);
      EXPECT_LT(e2, 5e-3 * std::max(1.0, std::abs(a.h1)));
    }
  }
}

TEST(AuxFun, ConstantsStayBounded) {
  for (const auto& bands : band_sets()) {
    const auto gd = build_green(bands);
    const auto hs = build_hsystem(gd);
    double big = 0.0;
    for (int n = 0; n <= 1000; ++n) {
      const auto a = solve_aux(hs, gd, n);
      for (double v : a.A) big = std::max(big, std::abs(v));
      for (const auto& v : a.nu) EXPECT_LE(std::abs(v), pi + 1e-15);
    }
    EXPECT_LT(big, 20.0);
  }
}

TEST(AuxFun, RejectsNegativeIndex) {
  const auto gd = build_green({Interval(-1, 0), Interval(1, 2)});
  const auto hs = build_hsystem(gd);
  EXPECT_THROW(solve_aux(hs, gd, -1), DomainError);
}
