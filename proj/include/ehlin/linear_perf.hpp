#pragma once

// Worst-case (Bernoulli-arrival) performance of the linear policy b -> s*b.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "ehlin/distribution.hpp"
#include "ehlin/numerics.hpp"

namespace ehlin {

inline constexpr double kDefaultSeriesTol = 1e-12;

/// Battery capacity c and mean-to-capacity ratio p.
struct EvalPoint {
  double c;
  double p;

  EvalPoint(double capacity, double ratio) : c(capacity), p(ratio) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw std::domain_error("EvalPoint: capacity must be finite and > 0, got " + std::to_string(c));
    }
    if (!(p > 0.0 && p < 1.0)) {
      throw std::domain_error("EvalPoint: MCR must lie in (0,1), got " + std::to_string(p));
    }
  }
};

/// Slope of a linear policy, s in [0, 1].
class Slope {
 public:
  explicit Slope(double s) : s_(s) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::domain_error("Slope: must lie in [0,1], got " + std::to_string(s));
    }
  }
  double value() const { return s_; }
  operator double() const { return s_; }  // NOLINT(google-explicit-constructor)

 private:
  double s_;
};

namespace detail {

// Thresholds splitting the terms x_i = c s (1-s)^i into a log-expansion
// region (x >= kHigh), a directly summed band, and a power-series tail
// (x <= kLow). Both series converge geometrically at these cut points.
inline constexpr double kHigh = 1.5;
inline constexpr double kLow = 0.75;

// Σ_{i=0}^{m-1} i w^i with w = 1 - p, accurate when m p is small.
inline double arith_geom_sum(double m, double p, double lambda) {
  if (m <= 1.0) return 0.0;
  const double w = 1.0 - p;
  const double y = (m - 1.0) * lambda;
  // g = 1 - e^{-y}(1 + y)
  double g;
  if (y < 0.5) {
    g = 0.0;
    double term = y;  // y^n / n!
    for (int n = 2; n < 40; ++n) {
      term *= y / n;
      const double add = (n % 2 == 0 ? 1.0 : -1.0) * (n - 1) * term;
      g += add;
      if (std::fabs(add) < 1e-18 * std::fabs(g)) break;
    }
  } else {
    g = -std::expm1(-y) - y * std::exp(-y);
  }
  // lambda - p = -log1p(-p) - p
  double lp;
  if (p < 1e-3) {
    lp = 0.0;
    double pk = p;
    for (int k = 2; k < 12; ++k) {
      pk *= p;
      lp += pk / k;
    }
  } else {
    lp = lambda - p;
  }
  const double f = g + std::exp(-y) * (m - 1.0) * lp;
  return w * f / (p * p);
}

}  // namespace detail

/// Γ̲(c,p,s) = Σ_i p(1-p)^i r(c s (1-s)^i).
///
/// The sum is split at the indices where x_i = c s (1-s)^i crosses
/// detail::kHigh and detail::kLow. Above kHigh, r(x) = (ln x + ln(1+1/x))/2
/// and both parts reduce to closed-form geometric sums; below kLow the
/// Mercator series of ln(1+x) is summed over i in closed form. Only the
/// band in between is summed term by term. The absolute error is <= tol.
inline double gamma_lower(const EvalPoint& pt, Slope slope, double tol = kDefaultSeriesTol) {
  if (!(tol > 0.0)) throw std::domain_error("gamma_lower: tol must be positive");
  const double s = slope.value();
  const double c = pt.c;
  const double p = pt.p;
  if (s == 0.0) return 0.0;
  if (s == 1.0) return p * reward(c);

  const double lambda = -std::log1p(-p);  // w = e^{-lambda}
  const double sigma = -std::log1p(-s);   // q = e^{-sigma}
  const double x0 = c * s;
  const double log_x0 = std::log(x0);

  numerics::CompensatedSum total;

  // Region I: indices with x_i >= kHigh.
  double m_high = 0.0;
  if (x0 >= detail::kHigh) {
    m_high = std::floor((log_x0 - std::log(detail::kHigh)) / sigma) + 1.0;
  }
  if (m_high > 0.0) {
    const double g0 = -std::expm1(-m_high * lambda) / p;
    const double g1 = detail::arith_geom_sum(m_high, p, lambda);
    total.add(0.5 * p * (log_x0 * g0 - sigma * g1));
    for (int k = 1; k < 400; ++k) {
      const double hk = numerics::scaled_geometric_sum(k * sigma - lambda, m_high, -k * log_x0);
      const double term = 0.5 * p * hk / k;
      total.add(k % 2 == 1 ? term : -term);
      if (term < tol / 8.0) break;
    }
  }

  // Band: kLow < x_i < kHigh, summed directly.
  double m_low = 0.0;
  if (x0 > detail::kLow) {
    m_low = std::ceil((log_x0 - std::log(detail::kLow)) / sigma);
  }
  m_low = std::max(m_low, m_high);
  double weight = std::exp(-m_high * lambda);
  double x = x0 * std::exp(-m_high * sigma);
  const double w = 1.0 - p;
  const double q = 1.0 - s;
  bool truncated = false;
  if (m_low > m_high) {
    const auto n = static_cast<std::int64_t>(m_low - m_high);
    numerics::CompensatedSum band;
    for (std::int64_t i = 0; i < n; ++i) {
      const double r = 0.5 * std::log1p(x);
      // Everything from here on is bounded by (1-p)^i r(x_i).
      if (weight * r < tol / 4.0) {
        truncated = true;
        break;
      }
      band.add(p * weight * r);
      weight *= w;
      x *= q;
    }
    total.add(band.value());
    if (!truncated) {
      weight = std::exp(-m_low * lambda);
      x = x0 * std::exp(-m_low * sigma);
    }
  }

  // Region III: x_i <= kLow, Σ_{i>=M} p w^i ln(1+x_i)/2 as a power series in x_M.
  if (!truncated) {
    double xk = 1.0;
    for (int k = 1; k < 2000; ++k) {
      xk *= x;
      const double denom = -std::expm1(-(lambda + k * sigma));  // 1 - w q^k
      const double term = 0.5 * p * weight * xk / (k * denom);
      total.add(k % 2 == 1 ? term : -term);
      if (term < tol / 8.0) break;
    }
  }
  return total.value();
}

/// Reference evaluation of Γ̲ by plain partial sums, stopping once the
/// analytic tail bound (1-p)^N r(c s (1-s)^N) drops below tol.
inline double gamma_lower_series(const EvalPoint& pt, Slope slope, double tol = kDefaultSeriesTol,
                                 std::int64_t max_terms = 2'000'000'000) {
  const double s = slope.value();
  if (s == 0.0) return 0.0;
  if (s == 1.0) return pt.p * reward(pt.c);
  numerics::CompensatedSum sum;
  double weight = 1.0;
  double x = pt.c * s;
  const double w = 1.0 - pt.p;
  const double q = 1.0 - s;
  for (std::int64_t i = 0; i < max_terms; ++i) {
    const double r = 0.5 * std::log1p(x);
    if (weight * r <= tol) return sum.value();
    sum.add(pt.p * weight * r);
    weight *= w;
    x *= q;
  }
  throw std::runtime_error("gamma_lower_series: term budget exhausted");
}

/// Γ̄(c,p) = r(pc).
inline double gamma_upper(const EvalPoint& pt) { return reward(pt.p * pt.c); }

/// F_p(c,s) = Γ̲ / Γ̄.
inline double nominal_factor(const EvalPoint& pt, Slope s, double tol = kDefaultSeriesTol) {
  return gamma_lower(pt, s, tol) / gamma_upper(pt);
}

/// G_p(c,s) = Γ̄ - Γ̲.
inline double nominal_gap(const EvalPoint& pt, Slope s, double tol = kDefaultSeriesTol) {
  return gamma_upper(pt) - gamma_lower(pt, s, tol);
}

/// lim_{c->inf} G_p(c,s) = (ln(p/s) - ((1-p)/p) ln(1-s)) / 2; +inf at s = 1.
inline double gap_limit(double p, double s) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gap_limit: p must lie in (0,1)");
  if (s == 1.0) return std::numeric_limits<double>::infinity();
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("gap_limit: s must lie in (0,1]");
  return 0.5 * (std::log(p / s) - (1.0 - p) / p * std::log1p(-s));
}

}  // namespace ehlin
