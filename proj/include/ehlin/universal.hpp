#pragma once

// c-universal linear policies for a fixed MCR p.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehlin/asymptotics.hpp"
#include "ehlin/linear_perf.hpp"
#include "ehlin/numerics.hpp"
#include "ehlin/slope_opt.hpp"

namespace ehlin {

struct SaddleResult {
  double c_times{0.0};
  double s_times{1.0};
  double f_times{1.0};
  std::size_t iterations{0};
  // f_times - inf_c F_p(c, s_times): the gain a best-responding capacity
  // could still extract against s_times. Zero at an exact saddle.
  double residual{0.0};
};

/// One side of the max-min / min-max problem: value and the point attaining it.
struct SaddleSide {
  double value{0.0};
  double c{0.0};
  double s{0.0};
};

namespace detail {

inline void check_mcr(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(who) + ": p must lie in (0,1)");
}

// Seeded golden-section minimization on [lo, hi]: a coarse scan picks the
// basin, golden-section refines inside the neighbouring cells.
template <class F>
numerics::Extremum seeded_minimize(F&& f, double lo, double hi, double tol, std::size_t seeds = 32) {
  std::size_t best = 0;
  double best_val = 0.0;
  std::vector<double> grid(seeds);
  for (std::size_t k = 0; k < seeds; ++k) {
    grid[k] = lo + (hi - lo) * double(k) / double(seeds - 1);
    const double v = f(grid[k]);
    if (k == 0 || v < best_val) {
      best = k;
      best_val = v;
    }
  }
  const double a = grid[best == 0 ? 0 : best - 1];
  const double b = grid[std::min(best + 1, seeds - 1)];
  auto m = numerics::golden_section_minimize(f, a, b, tol);
  m.evaluations += seeds;
  if (best_val < m.fx) m = {grid[best], best_val, m.evaluations};
  return m;
}

}  // namespace detail

/// inf_{c>0} F_p(c, s) and its argmin (c = 0 denotes the c -> 0 limit).
inline SaddleSide capacity_best_response(double p, double s, double tol_log_c = 1e-7) {
  detail::check_mcr(p, "capacity_best_response");
  if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("capacity_best_response: s must lie in (0,1]");
  auto f = [p, s](double log_c) {
    return nominal_factor(EvalPoint(std::exp(log_c), p), Slope(s));
  };
  const double lo = std::log(1e-3 * p / (1.0 - p));
  const double hi = std::log(1e7 / p);
  const auto m = detail::seeded_minimize(f, lo, hi, tol_log_c, 16);
  // As c -> 0, F_p(c,s) -> s / (1 - (1-p)(1-s)).
  const double small_c_limit = s / (p + s - p * s);
  if (small_c_limit < m.fx) return {small_c_limit, 0.0, s};
  return {m.fx, std::exp(m.x), s};
}

/// Minimax side: c× = argmin_c F*(c,p), s× = s*(c×,p), F× = F*(c×,p).
inline SaddleResult saddle_point(double p, double tol_log_c = 1e-7) {
  detail::check_mcr(p, "saddle_point");
  auto f = [p](double log_c) { return f_star(EvalPoint(std::exp(log_c), p)); };
  const double lo = std::log(p / (1.0 - p));
  const double hi = std::log(1e7 / p);
  const auto m = detail::seeded_minimize(f, lo, hi, tol_log_c);
  SaddleResult r;
  r.c_times = std::exp(m.x);
  const auto slope = optimal_slope(EvalPoint(r.c_times, p));
  r.s_times = slope.s_star;
  r.f_times = slope.f_star;
  r.iterations = m.evaluations;
  r.residual = std::fabs(r.f_times - capacity_best_response(p, r.s_times, tol_log_c).value);
  return r;
}

/// Maximin side: max over s of inf_c F_p(c,s), searched independently of
/// saddle_point.
inline SaddleSide maximin_side(double p, double tol_s = 1e-9) {
  detail::check_mcr(p, "maximin_side");
  auto phi = [p](double s) { return capacity_best_response(p, s).value; };
  const auto m = numerics::golden_section_maximize(phi, p, 1.0, tol_s);
  return capacity_best_response(p, m.x);
}

/// Closed-form approximation of s×(p) built from a*.
/// Defined on (0,1]; at p = 1 it saturates at 1.
inline double s_times_approx(double p, double a_star) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("s_times_approx: p must lie in (0,1]");
  const double s_tilde = std::pow(a_star, 0.05) * std::log1p(std::pow(a_star, 0.95) * p);
  return std::min(p / 2.0 * std::log1p(s_tilde) + (1.0 - p / 2.0) * s_tilde, 1.0);
}

inline double s_times_approx(double p) {
  return s_times_approx(p, cached_minimax_constants().a_star);
}

struct AdditiveUniversal {
  double s_plus{0.0};
  double g_plus{0.0};
};

/// The additive-gap optimal c-universal slope is the fixed fraction s+ = p.
inline AdditiveUniversal additive_universal(double p) {
  detail::check_mcr(p, "additive_universal");
  return {p, gap_limit(p, p)};
}

/// sup over p of lim_c G_p(c, s×(p)) = (a* - ln a*) / 2.
inline double g_times_sup(double a_star) { return (a_star - std::log(a_star)) / 2.0; }
inline double g_times_sup() { return g_times_sup(cached_minimax_constants().a_star); }

/// p -> G_p(s×(p)), the large-capacity additive gap of the slope s×(p).
inline double g_times_curve(double p) { return gap_limit(p, saddle_point(p).s_times); }

}  // namespace ehlin
