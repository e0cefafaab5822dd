#pragma once

// Maximin-optimal slope s*(c,p) and the nominal factor/gap it achieves.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "ehlin/linear_perf.hpp"
#include "ehlin/numerics.hpp"

namespace ehlin {

inline constexpr double kDefaultSlopeTol = 1e-10;

struct SlopeResult {
  double s_star{1.0};
  double gamma_at_star{0.0};
  double f_star{1.0};
  double g_star{0.0};
  std::size_t iterations{0};
  // Set when the seed scan found a better point than the first golden-section
  // pass and the search was restarted around it.
  bool restarted{false};
};

/// Greedy (s = 1) is maximin-optimal exactly when c <= p/(1-p).
inline bool greedy_is_optimal(const EvalPoint& pt) { return pt.c <= pt.p / (1.0 - pt.p); }

inline SlopeResult optimal_slope(const EvalPoint& pt, double tol_s = kDefaultSlopeTol) {
  if (!(tol_s > 0.0)) throw std::domain_error("optimal_slope: tol_s must be positive");
  const double upper = gamma_upper(pt);
  auto finish = [&](double s, double g, std::size_t it, bool restarted) {
    return SlopeResult{s, g, g / upper, upper - g, it, restarted};
  };
  if (greedy_is_optimal(pt)) return finish(1.0, pt.p * reward(pt.c), 0, false);

  auto objective = [&pt](double s) { return gamma_lower(pt, Slope(s)); };

  // s* >= p, so the search interval is [p, 1].
  constexpr std::size_t kSeeds = 32;
  std::array<double, kSeeds> seed_s{};
  std::array<double, kSeeds> seed_v{};
  const double log_p = std::log(pt.p);
  std::size_t best_seed = 0;
  for (std::size_t k = 0; k < kSeeds; ++k) {
    seed_s[k] = k + 1 == kSeeds ? 1.0 : std::exp(log_p * (1.0 - double(k) / (kSeeds - 1)));
    seed_v[k] = objective(seed_s[k]);
    if (seed_v[k] > seed_v[best_seed]) best_seed = k;
  }

  auto best = numerics::golden_section_maximize(objective, pt.p, 1.0, tol_s);
  std::size_t evals = best.evaluations + kSeeds;
  bool restarted = false;
  if (seed_v[best_seed] > best.fx * (1.0 + 1e-6)) {
    const double lo = seed_s[best_seed == 0 ? 0 : best_seed - 1];
    const double hi = seed_s[best_seed + 1 == kSeeds ? best_seed : best_seed + 1];
    best = numerics::golden_section_maximize(objective, lo, hi, tol_s);
    evals += best.evaluations;
    restarted = true;
  }
  return finish(best.x, best.fx, evals, restarted);
}

/// F*(c,p) = Γ̲(c,p,s*) / Γ̄(c,p).
inline double f_star(const EvalPoint& pt, double tol_s = kDefaultSlopeTol) {
  return optimal_slope(pt, tol_s).f_star;
}

/// G*(c,p) = Γ̄(c,p) - Γ̲(c,p,s*).
inline double g_star(const EvalPoint& pt, double tol_s = kDefaultSlopeTol) {
  return optimal_slope(pt, tol_s).g_star;
}

/// E_N[(s(N+1)-1)/(1+cs(1-s)^N)] - (s/p - 1), N ~ Geometric(p).
///
/// Evaluated through the equivalent form -E_N[(s(N+1)-1) x_N/(1+x_N)],
/// x_N = cs(1-s)^N, whose terms decay with x_N; this avoids cancelling two
/// O(s/p) quantities when p is small. The value equals 2s(1-s)∂Γ̲/∂s.
/// Truncation error is below tol * p x_0/(1+x_0), the scale of the leading term.
inline double stationarity_residual(const EvalPoint& pt, double s, double tol = kDefaultSeriesTol) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("stationarity_residual: s must lie in (0,1)");
  const double p = pt.p;
  const double w = 1.0 - p;
  const double q = 1.0 - s;
  const double wq = w * q;
  const double one_minus_wq = p + s - p * s;
  numerics::CompensatedSum sum;
  double weight = 1.0;
  double x = pt.c * s;
  const double scale = p * x / (1.0 + x);
  for (std::int64_t i = 0; i < 2'000'000'000; ++i) {
    const double n1 = double(i) + 1.0;
    const double tail_bound = x * weight * p *
                              ((n1 * s + 1.0) / one_minus_wq + s * wq / (one_minus_wq * one_minus_wq));
    if (tail_bound < tol * scale) break;
    sum.add(-p * weight * (n1 * s - 1.0) * x / (1.0 + x));
    weight *= w;
    x *= q;
  }
  return sum.value();
}

/// Interior root of stationarity_residual, by bisection on [p, 1).
/// Requires c > p/(1-p).
inline double solve_stationarity(const EvalPoint& pt, double tol = 1e-13) {
  if (greedy_is_optimal(pt)) throw std::domain_error("solve_stationarity: requires c > p/(1-p)");
  auto f = [&pt](double s) { return stationarity_residual(pt, s); };
  // The residual vanishes at s = 1 as well, so approach it from below until
  // the sign flips.
  double hi = 1.0 - 1e-6;
  for (double gap : {1e-9, 1e-12}) {
    if (f(hi) < 0.0) break;
    hi = 1.0 - gap;
  }
  return numerics::bisect_root(f, pt.p, hi, tol);
}

struct WorstMcr {
  double p_star{0.0};
  double f_lower_bar{1.0};
};

/// p*(c) = argmin_p F*(c,p) and F̲*_c = min_p F*(c,p).
///
/// The search runs on ln p: a 24-point scan locates the basin and a
/// golden-section pass refines it to width `tol` in ln p.
inline WorstMcr worst_p_for_c(double c, double tol = 1e-7) {
  if (!(c > 0.0)) throw std::domain_error("worst_p_for_c: capacity must be > 0");
  const double lo = std::log(1e-4 * std::min(1.0, 1.0 / c));
  const double hi = std::log1p(-1e-9);
  auto objective = [c](double log_p) { return f_star(EvalPoint(c, std::exp(log_p))); };
  constexpr int kScan = 24;
  std::array<double, kScan> grid{};
  std::array<double, kScan> vals{};
  int best = 0;
  for (int k = 0; k < kScan; ++k) {
    grid[k] = lo + (hi - lo) * k / (kScan - 1);
    vals[k] = objective(grid[k]);
    if (vals[k] < vals[best]) best = k;
  }
  const double a = grid[std::max(best - 1, 0)];
  const double b = grid[std::min(best + 1, kScan - 1)];
  const auto m = numerics::golden_section_minimize(objective, a, b, tol);
  return {std::exp(m.x), m.fx};
}

}  // namespace ehlin
