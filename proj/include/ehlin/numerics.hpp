#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>

namespace ehlin {
namespace numerics {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_{0.0};
  double comp_{0.0};
};

struct Extremum {
  double x{0.0};
  double fx{0.0};
  std::size_t evaluations{0};
};

inline constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5)-1)/2

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is no wider than `tol`. Both endpoints are
/// compared against the interior optimum so boundary maxima are returned
/// exactly.
template <class F>
Extremum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_maximize: lo > hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_maximize: tol must be positive");
  Extremum best;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  std::size_t evals = 2;
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++evals;
    // Bracket cannot shrink any further in floating point.
    if (x1 >= x2 && b - a > tol) break;
  }
  best = f1 >= f2 ? Extremum{x1, f1, 0} : Extremum{x2, f2, 0};
  const double flo = f(lo);
  const double fhi = f(hi);
  evals += 2;
  if (flo > best.fx) best = {lo, flo, 0};
  if (fhi > best.fx) best = {hi, fhi, 0};
  best.evaluations = evals;
  return best;
}

template <class F>
Extremum golden_section_minimize(F&& f, double lo, double hi, double tol) {
  auto neg = [&f](double x) { return -f(x); };
  Extremum e = golden_section_maximize(neg, lo, hi, tol);
  e.fx = -e.fx;
  return e;
}

/// Bisection root of a continuous f with f(lo) and f(hi) of opposite sign.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol, std::size_t max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::domain_error("bisect_root: root is not bracketed");
  }
  for (std::size_t i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Σ_{i=0}^{m-1} exp(log_scale + i*rate), evaluated without overflow as long
// as the largest summand is representable.
inline double scaled_geometric_sum(double rate, double m, double log_scale) {
  if (m <= 0.0) return 0.0;
  if (rate == 0.0) return m * std::exp(log_scale);
  const double mr = m * rate;
  if (rate < 0.0 || mr < 40.0) {
    return std::exp(log_scale) * (std::expm1(mr) / std::expm1(rate));
  }
  return (std::exp(log_scale + mr) - std::exp(log_scale)) / std::expm1(rate);
}

}  // namespace numerics
}  // namespace ehlin
