#include <gtest/gtest.h>

#include <cmath>

#include "ehlin/universal.hpp"
#include "oracles.hpp"

using namespace ehlin;

TEST(SaddlePoint, ReferenceRows) {
  struct Row { double p, f, c, s; };
  for (const Row& r : {Row{0.5, 0.776854, 6.509980, 0.720563}, Row{0.001, 0.653247, 1795.415904, 0.002282},
                       Row{0.99, 0.992095, 125.323729, 0.997956}}) {
    const auto sp = saddle_point(r.p);
    EXPECT_NEAR(sp.f_times, r.f, 1e-5) << r.p;
    EXPECT_NEAR(sp.s_times, r.s, 1e-4) << r.p;
    EXPECT_NEAR(sp.c_times, r.c, 1e-3 * r.c) << r.p;
    EXPECT_LT(sp.residual, 1e-8);
  }
}

TEST(SaddlePoint, SlopeIsOptimalAtSaddleCapacity) {
  for (double p : {0.01, 0.3, 0.8}) {
    const auto sp = saddle_point(p);
    EXPECT_NEAR(sp.s_times, optimal_slope(EvalPoint(sp.c_times, p)).s_star, 1e-9);
  }
}

TEST(SaddlePoint, SaddleInequalitiesOnProbes) {
  oracle::Gen gen(51);
  for (double p : {0.05, 0.5, 0.9}) {
    const auto sp = saddle_point(p);
    for (int i = 0; i < 40; ++i) {
      const double c = gen.log_uniform(1e-2, 1e5);
      const double s = gen.uniform(0.001, 1.0);
      EXPECT_GE(nominal_factor(EvalPoint(c, p), Slope(sp.s_times)), sp.f_times - 1e-7);
      EXPECT_LE(nominal_factor(EvalPoint(sp.c_times, p), Slope(s)), sp.f_times + 1e-7);
    }
  }
}

TEST(SaddlePoint, MaximinMatchesMinimax) {
  for (double p : {0.01, 0.1, 0.5, 0.9}) {
    const auto mm = maximin_side(p);
    const auto sp = saddle_point(p);
    EXPECT_NEAR(mm.value, sp.f_times, 1e-6) << p;
  }
}

TEST(SaddlePoint, ValueDecreasesTowardConstant) {
  double prev = 1.0;
  for (double p : {0.1, 0.01, 0.001, 1e-4}) {
    const double f = saddle_point(p).f_times;
    EXPECT_LT(f, prev);
    EXPECT_GT(f, cached_minimax_constants().f_lower_bar - 1e-6);
    prev = f;
  }
}

TEST(CapacityBestResponse, IsInfimumOverSampledCapacities) {
  for (auto [p, s] : {std::pair{0.1, 0.2}, {0.5, 0.7}, {0.01, 0.5}}) {
    const auto br = capacity_best_response(p, s);
    for (double c = 1e-3; c < 1e6; c *= 1.7) {
      EXPECT_GE(nominal_factor(EvalPoint(c, p), Slope(s)), br.value - 1e-9) << p << ' ' << s << ' ' << c;
    }
  }
}

TEST(STimesApprox, CloseToExact) {
  EXPECT_NEAR(s_times_approx(0.1), 0.205705, 1.5e-3);
  EXPECT_NEAR(s_times_approx(0.9), 0.967304, 1.5e-3);
  EXPECT_EQ(s_times_approx(1.0), 1.0);
  const double a = cached_minimax_constants().a_star;
  EXPECT_NEAR(s_times_approx(1e-7) / 1e-7, a, 1e-4 * a);
  EXPECT_THROW(s_times_approx(0.0), std::domain_error);
}

TEST(AdditiveUniversal, FixedFraction) {
  const auto a = additive_universal(0.5);
  EXPECT_EQ(a.s_plus, 0.5);
  EXPECT_NEAR(a.g_plus, 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(additive_universal(1e-6).g_plus, 0.5, 1e-5);
  EXPECT_LT(additive_universal(0.99).g_plus, 0.05);
}

TEST(GapCurve, BelowSupremumAndIncreasingAsRatioShrinks) {
  const double sup = g_times_sup();
  EXPECT_NEAR(sup, 0.7292, 5e-4);
  double prev = 0.0;
  for (double p : {0.9, 0.5, 0.1, 0.01, 0.001}) {
    const double g = g_times_curve(p);
    EXPECT_LT(g, sup);
    EXPECT_GT(g, prev);
    prev = g;
  }
  EXPECT_GT(prev, 0.72);
}
