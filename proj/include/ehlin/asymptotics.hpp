#pragma once

// Small-p / large-c asymptotics: Γ₀(a,b), α̂(b) and the minimax constants.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ehlin/distribution.hpp"
#include "ehlin/linear_perf.hpp"
#include "ehlin/numerics.hpp"

namespace ehlin {

/// Γ₀(a,b) = ∫_0^∞ e^{-x} r(a b e^{-a x}) dx, computed as ∫_0^1 r(a b u^a) du.
inline double gamma0(double a, double b, double tol = 1e-12) {
  if (!(a >= 1.0)) throw std::domain_error("gamma0: a must be >= 1");
  if (!(b > 0.0)) throw std::domain_error("gamma0: b must be > 0");
  const double ab = a * b;
  auto integrand = [a, ab](double u) { return 0.5 * std::log1p(ab * std::pow(u, a)); };
  // Boost's tolerance is relative to the L1 norm, which is at most r(ab).
  const double rel_tol = tol / std::max(1.0, reward(ab));
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 20,
                                                                        rel_tol, &error);
}

/// α̂(b) = argmax_{a >= 1} Γ₀(a,b).
inline double alpha_hat(double b, double tol = 1e-8) {
  if (!(b > 0.0)) throw std::domain_error("alpha_hat: b must be > 0");
  auto f = [b](double a) { return gamma0(a, b); };
  // Double a until Γ₀ stops increasing; the maximum then lies in
  // [a/4, a] (or [1, 2] when it is already falling at a = 2).
  double prev_a = 1.0;
  double prev_f = f(1.0);
  double lo = 1.0;
  double hi = 2.0;
  for (double a = 2.0;; a *= 2.0) {
    if (a > 1e9) throw std::runtime_error("alpha_hat: no maximum found below a = 1e9");
    const double fa = f(a);
    if (fa <= prev_f) {
      lo = std::max(1.0, prev_a / 2.0);
      hi = a;
      break;
    }
    prev_a = a;
    prev_f = fa;
  }
  return numerics::golden_section_maximize(f, lo, hi, tol).x;
}

struct MinimaxConstants {
  double a_star{0.0};
  double b_star{0.0};
  double f_lower_bar{0.0};
  // A 1024-point scan of Γ₀(·, b*) found nothing above Γ₀(a*, b*).
  bool unimodal_scan_ok{false};
};

/// (a*, b*, F̲*): b* minimizes h(b) = max_a Γ₀(a,b) / r(b) (searched on ln b),
/// a* = α̂(b*), F̲* = h(b*).
inline MinimaxConstants minimax_constants(double tol_log_b = 1e-7) {
  auto h = [](double log_b) {
    const double b = std::exp(log_b);
    return gamma0(alpha_hat(b), b) / reward(b);
  };
  const auto m = numerics::golden_section_minimize(h, std::log(1e-2), std::log(1e2), tol_log_b);
  MinimaxConstants out;
  out.b_star = std::exp(m.x);
  out.a_star = alpha_hat(out.b_star);
  out.f_lower_bar = m.fx;

  const double peak = gamma0(out.a_star, out.b_star);
  const double scan_hi = 8.0 * out.a_star;
  out.unimodal_scan_ok = true;
  for (int k = 0; k < 1024; ++k) {
    const double a = 1.0 + (scan_hi - 1.0) * k / 1023.0;
    if (gamma0(a, out.b_star) > peak * (1.0 + 1e-12)) {
      out.unimodal_scan_ok = false;
      break;
    }
  }
  return out;
}

/// Computed once per process.
inline const MinimaxConstants& cached_minimax_constants() {
  static const MinimaxConstants constants = minimax_constants();
  return constants;
}

struct SandwichResult {
  double delta{0.0};        // Γ̲(b/p, p, a p) - Γ₀(a,b)
  double lower_bound{0.0};  // -a γ₀ p
  double upper_bound{0.0};  // γ₁ p ln(1/p) + e² γ₀ p
  double lower_slack{0.0};  // delta - lower_bound
  double upper_slack{0.0};  // upper_bound - delta
  bool contained() const { return lower_slack >= 0.0 && upper_slack >= 0.0; }
};

/// Compares the finite-p throughput of slope a p at capacity b/p with the
/// integral limit Γ₀(a,b), together with the explicit O(p log(1/p)) bounds.
inline SandwichResult sandwich_check(double a, double b, double p) {
  if (!(a >= 1.0)) throw std::domain_error("sandwich_check: a must be >= 1");
  if (!(b > 0.0)) throw std::domain_error("sandwich_check: b must be > 0");
  if (!(p > 0.0 && p < 1.0 / a)) throw std::domain_error("sandwich_check: need 0 < p < 1/a");
  const double g0 = reward(a * b);
  const double g1 = g0 / 2.0 + a / 4.0;
  SandwichResult r;
  r.delta = gamma_lower(EvalPoint(b / p, p), Slope(a * p)) - gamma0(a, b);
  r.lower_bound = -a * g0 * p;
  r.upper_bound = g1 * p * std::log(1.0 / p) + std::numbers::e * std::numbers::e * g0 * p;
  r.lower_slack = r.delta - r.lower_bound;
  r.upper_slack = r.upper_bound - r.delta;
  return r;
}

}  // namespace ehlin
