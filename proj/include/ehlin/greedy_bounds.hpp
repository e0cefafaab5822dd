#pragma once

// Greedy-policy optimality threshold c*(Q) and its semi-universal bounds.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "ehlin/distribution.hpp"

namespace ehlin {

/// Distributions supported on [x_lo, x_hi] with mean mu.
struct IntervalMeanFamily {
  double x_lo;
  double x_hi;
  double mu;

  IntervalMeanFamily(double lo, double hi, double mean) : x_lo(lo), x_hi(hi), mu(mean) {
    if (!(x_lo >= 0.0) || !std::isfinite(x_hi)) {
      throw std::domain_error("IntervalMeanFamily: need finite 0 <= x_lo");
    }
    if (!(x_lo <= mu && mu <= x_hi)) {
      throw std::domain_error("IntervalMeanFamily: need x_lo <= mu <= x_hi, got (" +
                              std::to_string(x_lo) + ", " + std::to_string(x_hi) + ", " +
                              std::to_string(mu) + ")");
    }
  }

  double tau() const { return x_hi - x_lo - 1.0; }
};

/// The two-point sequence (2n(1-p)/(n+1)) δ_{(n-1)/2} + ((2pn-n+1)/(n+1)) δ_n,
/// which has MCR p at capacity n and greedy threshold >= n when p >= 3/4.
struct UnboundedWitness {
  double p;

  DiscreteDistribution member(double n) const {
    if (!(n >= 1.0)) throw std::domain_error("UnboundedWitness: n must be >= 1");
    return DiscreteDistribution(
        {{(n - 1.0) / 2.0, 2.0 * n * (1.0 - p) / (n + 1.0)}, {n, (2.0 * p * n - n + 1.0) / (n + 1.0)}});
  }
};

struct BoundsResult {
  double c_lo{0.0};
  // +inf when the family has no finite upper bound; see `witness`.
  double c_hi{0.0};
  std::optional<DiscreteDistribution> attaining_lo;
  std::optional<DiscreteDistribution> attaining_hi;
  std::optional<UnboundedWitness> witness;
  // c_lo == x_hi, which holds iff mu == x_hi.
  bool lower_equals_x_hi{false};
  // c_hi == x_hi, i.e. the upper cap binds.
  bool upper_equals_x_hi{false};

  bool unbounded() const { return std::isinf(c_hi); }
};

/// c*(Q) = max{c >= 0 : 1/(1+c) >= Σ_{x_i < c} q_i/(1+x_i)}.
///
/// The right side is constant on each (x_j, x_{j+1}] and the left side is
/// decreasing, so the first segment whose cap 1/S_j - 1 falls short of its
/// right end decides the answer.
inline double greedy_threshold(const DiscreteDistribution& q) {
  const auto& atoms = q.atoms();
  double s = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    s += atoms[j].prob / (1.0 + atoms[j].value);
    const double cap = 1.0 / s - 1.0;
    const double next =
        j + 1 < atoms.size() ? atoms[j + 1].value : std::numeric_limits<double>::infinity();
    if (cap >= next) continue;
    return std::max(cap, atoms[j].value);
  }
  // Unreachable: S_j > 0 once any atom is passed, so the last segment has a finite cap.
  throw std::logic_error("greedy_threshold: no binding segment");
}

/// Left side of the threshold condition minus the right side, at c.
inline double greedy_condition_margin(const DiscreteDistribution& q, double c) {
  double s = 0.0;
  for (const auto& a : q.atoms()) {
    if (a.value < c) s += a.prob / (1.0 + a.value);
  }
  return 1.0 / (1.0 + c) - s;
}

/// inf over the family of ∫_{[0,c)} r'(x) dQ.
inline double f_lower(double c, const IntervalMeanFamily& fam) {
  if (!(c >= 0.0)) throw std::domain_error("f_lower: c must be >= 0");
  const double xl = fam.x_lo;
  const double mu = fam.mu;
  double two_f;
  if (c <= mu) {
    two_f = 0.0;
  } else if (c > fam.x_hi || c >= 2.0 * mu + 1.0) {
    two_f = 1.0 / (1.0 + mu);
  } else if (c < 2.0 * xl + 1.0) {
    two_f = (c - mu) / ((1.0 + xl) * (c - xl));
  } else {
    two_f = 4.0 * (c - mu) / ((c + 1.0) * (c + 1.0));
  }
  return two_f / 2.0;
}

/// sup over the family of ∫_{[0,c)} r'(x) dQ.
inline double f_upper(double c, const IntervalMeanFamily& fam) {
  if (!(c >= 0.0)) throw std::domain_error("f_upper: c must be >= 0");
  const double xl = fam.x_lo;
  const double xh = fam.x_hi;
  const double mu = fam.mu;
  double two_f;
  if (c <= xl) {
    two_f = 0.0;
  } else if (c > xh) {
    two_f = (1.0 + xl + xh - mu) / ((1.0 + xl) * (1.0 + xh));
  } else if (c <= fam.tau()) {
    two_f = (xh - mu) / ((xh - xl) * (1.0 + xl));
  } else if (c <= mu) {
    // mu == x_hi forces Q = δ_{x_hi}, which puts no mass below c.
    two_f = mu == xh ? 0.0 : (xh - mu) / ((xh - c) * (1.0 + c));
  } else {
    two_f = (1.0 + xl + c - mu) / ((1.0 + xl) * (1.0 + c));
  }
  return two_f / 2.0;
}

namespace detail {

inline double upper_c1(double xl, double mu) {
  const double sum = xl + mu;
  const double disc = std::max(sum * sum - 4.0 * (xl * xl + xl - mu), 0.0);
  return (sum + std::sqrt(disc)) / 2.0;
}

inline double upper_c2(double mu) { return (4.0 * mu + 1.0) / 3.0; }

inline bool upper_first_branch(double xl, double mu) { return mu < 1.5 * xl + 0.5; }

}  // namespace detail

/// Tightest bounds on c*(Q) over distributions on [x_lo, x_hi] with mean mu.
inline BoundsResult c_bounds_interval_mean(const IntervalMeanFamily& fam) {
  const double xl = fam.x_lo;
  const double xh = fam.x_hi;
  const double mu = fam.mu;
  BoundsResult out;
  out.c_lo = mu < fam.tau() ? (xh - xl) * (1.0 + xl) / (xh - mu) - 1.0 : mu;
  const double c_uncapped =
      detail::upper_first_branch(xl, mu) ? detail::upper_c1(xl, mu) : detail::upper_c2(mu);
  out.c_hi = std::min(c_uncapped, xh);
  out.lower_equals_x_hi = mu == xh;
  out.upper_equals_x_hi = xh <= c_uncapped;
  // Below tau the extreme two-point law attains c_lo; otherwise the bound
  // is only approached.
  if (mu < fam.tau()) {
    out.attaining_lo = DiscreteDistribution(
        {{xl, (xh - mu) / (xh - xl)}, {xh, (mu - xl) / (xh - xl)}});
  } else if (xl == xh) {
    out.attaining_lo = DiscreteDistribution::degenerate(xl);
  }
  return out;
}

/// The distribution with clipped mean mu_bar and support in [x_lo, c] whose
/// greedy threshold is c, for c the upper bound of clipped_bounds.
inline DiscreteDistribution clipped_upper_attainer(double x_lo, double mu_bar, double c) {
  if (detail::upper_first_branch(x_lo, mu_bar)) {
    if (c == x_lo) return DiscreteDistribution::degenerate(c);
    return DiscreteDistribution(
        {{x_lo, (c - mu_bar) / (c - x_lo)}, {c, (mu_bar - x_lo) / (c - x_lo)}});
  }
  return DiscreteDistribution(
      {{(c - 1.0) / 2.0, 2.0 * (c - mu_bar) / (c + 1.0)}, {c, (2.0 * mu_bar - c + 1.0) / (c + 1.0)}});
}

/// Bounds on c*(Q) over clipped distributions with least value x_lo and
/// clipped mean mu_bar.
inline BoundsResult clipped_bounds(double x_lo, double mu_bar) {
  if (!(x_lo >= 0.0 && x_lo <= mu_bar) || !std::isfinite(mu_bar)) {
    throw std::domain_error("clipped_bounds: need 0 <= x_lo <= mu_bar");
  }
  BoundsResult out;
  out.c_lo = mu_bar;
  out.c_hi = detail::upper_first_branch(x_lo, mu_bar) ? detail::upper_c1(x_lo, mu_bar)
                                                      : detail::upper_c2(mu_bar);
  out.attaining_lo = DiscreteDistribution::degenerate(mu_bar);
  out.attaining_hi = clipped_upper_attainer(x_lo, mu_bar, out.c_hi);
  return out;
}

/// Upper bound on c*(Q) over clipped distributions on [0, c] with MCR p.
/// The lower bound is 0.
inline BoundsResult mcr_upper(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("mcr_upper: p must lie in (0,1)");
  BoundsResult out;
  if (p < 0.5) {
    out.c_hi = p / (1.0 - p);
    out.attaining_hi = DiscreteDistribution({{0.0, 1.0 - p}, {out.c_hi, p}});
  } else if (p < 0.75) {
    const double d = 3.0 - 4.0 * p;
    out.c_hi = 1.0 / d;
    out.attaining_hi = DiscreteDistribution({{(2.0 * p - 1.0) / d, 0.5}, {1.0 / d, 0.5}});
  } else {
    out.c_hi = std::numeric_limits<double>::infinity();
    out.witness = UnboundedWitness{p};
  }
  return out;
}

}  // namespace ehlin
