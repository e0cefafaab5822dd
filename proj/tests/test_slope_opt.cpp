#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ehlin/slope_opt.hpp"
#include "oracles.hpp"

using namespace ehlin;

TEST(OptimalSlope, ReferenceRows) {
  const auto a = optimal_slope(EvalPoint(10.0, 0.5));
  EXPECT_NEAR(a.s_star, 0.677521, 1e-5);
  EXPECT_NEAR(a.gamma_at_star, 0.698589, 1e-6);
  const auto b = optimal_slope(EvalPoint(1000.0, 0.9));
  EXPECT_NEAR(b.s_star, 0.903606, 1e-5);
  EXPECT_NEAR(b.gamma_at_star, 3.275259, 1e-6);
}

TEST(OptimalSlope, GreedyRegionReturnsOne) {
  const auto r = optimal_slope(EvalPoint(0.5, 0.5));
  EXPECT_EQ(r.s_star, 1.0);
  EXPECT_TRUE(greedy_is_optimal(EvalPoint(0.5, 0.5)));
  EXPECT_FALSE(greedy_is_optimal(EvalPoint(1.01, 0.5)));
  EXPECT_EQ(optimal_slope(EvalPoint(0.001, 0.9)).s_star, 1.0);
}

TEST(OptimalSlope, BeatsDenseGridOfOracle) {
  oracle::Gen gen(31);
  for (int i = 0; i < 25; ++i) {
    const double c = gen.log_uniform(0.1, 1e4);
    const double p = gen.log_uniform(2e-3, 0.95);
    const auto r = optimal_slope(EvalPoint(c, p));
    double best = 0.0;
    for (int k = 1; k <= 800; ++k) {
      best = std::max(best, oracle::gamma_lower(c, p, std::pow(k / 800.0, 2.0)));
    }
    EXPECT_GE(r.gamma_at_star, best - 1e-12) << "c=" << c << " p=" << p;
    EXPECT_GE(r.s_star, p - 1e-9);
  }
}

TEST(OptimalSlope, DerivedRatiosConsistent) {
  const EvalPoint pt(100.0, 0.1);
  const auto r = optimal_slope(pt);
  EXPECT_NEAR(r.f_star, r.gamma_at_star / gamma_upper(pt), 1e-15);
  EXPECT_NEAR(r.g_star, gamma_upper(pt) - r.gamma_at_star, 1e-15);
  EXPECT_EQ(f_star(pt), r.f_star);
  EXPECT_EQ(g_star(pt), r.g_star);
}

TEST(Stationarity, ResidualVanishesAtOptimum) {
  for (auto [c, p] : {std::pair{10.0, 0.5}, {100.0, 0.01}, {1000.0, 0.9}, {1.0, 0.1}}) {
    const EvalPoint pt(c, p);
    const double s = optimal_slope(pt).s_star;
    EXPECT_NEAR(stationarity_residual(pt, s), 0.0, 1e-8) << c << ' ' << p;
    EXPECT_NEAR(solve_stationarity(pt), s, 1e-6) << c << ' ' << p;
  }
}

TEST(Stationarity, SignAboveOptimumIsNegative) {
  EXPECT_LT(stationarity_residual(EvalPoint(10.0, 0.5), 0.9), -0.05);
  EXPECT_GT(stationarity_residual(EvalPoint(10.0, 0.5), 0.55), 0.0);
}

TEST(Stationarity, EqualsScaledSlopeDerivative) {
  oracle::Gen gen(32);
  for (int i = 0; i < 60; ++i) {
    const double c = gen.log_uniform(0.5, 1e4);
    const double p = gen.log_uniform(1e-3, 0.9);
    const double s = gen.uniform(0.05, 0.95);
    const double h = 1e-5;
    const double d = (oracle::gamma_lower(c, p, s + h) - oracle::gamma_lower(c, p, s - h)) / (2 * h);
    const double want = 2.0 * s * (1.0 - s) * d;
    EXPECT_NEAR(stationarity_residual(EvalPoint(c, p), s), want, 1e-6 * (1.0 + std::fabs(want)));
  }
}

TEST(Stationarity, RequiresNonGreedyRegion) {
  EXPECT_THROW(solve_stationarity(EvalPoint(0.5, 0.5)), std::domain_error);
  EXPECT_THROW(stationarity_residual(EvalPoint(2.0, 0.5), 1.0), std::domain_error);
}

TEST(WorstMcr, ReferenceRows) {
  const auto a = worst_p_for_c(1000.0);
  EXPECT_NEAR(a.p_star, 0.001780, 2e-5);
  EXPECT_NEAR(a.f_lower_bar, 0.653408, 1e-5);
  const auto b = worst_p_for_c(10.0);
  EXPECT_NEAR(b.p_star, 0.105229, 2e-4);
  EXPECT_NEAR(b.f_lower_bar, 0.683399, 1e-5);
  EXPECT_NEAR(worst_p_for_c(1e-3).f_lower_bar, 0.999501, 1e-5);
}

TEST(WorstMcr, IsMinimumOverSampledRatios) {
  for (double c : {0.1, 3.0, 300.0}) {
    const auto w = worst_p_for_c(c);
    for (double p = 1e-4; p < 1.0; p *= 1.4) {
      EXPECT_GE(f_star(EvalPoint(c, p)), w.f_lower_bar - 1e-9) << c << ' ' << p;
    }
  }
}

TEST(SlopeMonotonicity, SmallGrid) {
  for (double c : {0.3, 3.0, 30.0, 300.0}) {
    double prev = 0.0;
    for (double p = 0.01; p < 0.99; p += 0.07) {
      const double s = optimal_slope(EvalPoint(c, p)).s_star;
      EXPECT_GE(s, prev - 1e-6);
      prev = s;
    }
  }
  for (double p : {0.01, 0.2, 0.7}) {
    double prev = 1.0;
    for (double c = 0.05; c < 1e4; c *= 2.0) {
      const double s = optimal_slope(EvalPoint(c, p)).s_star;
      EXPECT_LE(s, prev + 1e-6);
      prev = s;
    }
  }
}
