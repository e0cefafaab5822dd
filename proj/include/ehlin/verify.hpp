#pragma once

// Numerical verification suites for the qualitative claims about s*, F*,
// α̂, the saddle point, the large-c / small-p limits and the ŝ× approximation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <string_view>
#include <vector>

#include "ehlin/asymptotics.hpp"
#include "ehlin/grids.hpp"
#include "ehlin/linear_perf.hpp"
#include "ehlin/parallel.hpp"
#include "ehlin/simulator.hpp"
#include "ehlin/slope_opt.hpp"
#include "ehlin/tables.hpp"
#include "ehlin/universal.hpp"

namespace ehlin {

inline constexpr double kMonotoneSlack = 1e-6;

inline constexpr std::array<std::string_view, 7> kVerifySuites = {
    "unimodal", "s-star-monotone", "f-star-monotone", "alpha-finite", "saddle", "limits", "s-times-approx"};

struct VerifyReport {
  explicit VerifyReport(std::string suite) : name(std::move(suite)) {}

  std::string name;
  bool passed{true};
  std::size_t checks{0};
  std::size_t failures{0};
  // Suite-specific headline number (largest observed deviation or error).
  double metric{0.0};
  std::string metric_name;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      passed = false;
      if (notes.size() < 20) notes.push_back("FAIL " + what);
    }
  }
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Pairs (c, p) ∈ A × B with c > p/(1-p).
inline std::vector<EvalPoint> interior_grid_points() {
  std::vector<EvalPoint> out;
  for (double c : grids::capacities_a()) {
    for (double p : grids::mcrs_b()) {
      if (c > p / (1.0 - p)) out.emplace_back(c, p);
    }
  }
  return out;
}

}  // namespace detail

/// Γ̲(c,p,·) has no interior local minimum on [p,1] for (c,p) ∈ A × B, and
/// the golden-section optimum agrees with the stationarity root on the
/// optimal-slopes rows.
inline VerifyReport verify_unimodal() {
  VerifyReport rep{"unimodal"};
  rep.metric_name = "max |s* - s*_2|";
  const auto pts = detail::interior_grid_points();
  constexpr int kScan = 128;
  const auto bad = parallel_map<int>(pts.size(), [&](std::size_t i) {
    const auto& pt = pts[i];
    std::vector<double> v(kScan);
    for (int k = 0; k < kScan; ++k) {
      const double s = pt.p + (1.0 - pt.p) * k / (kScan - 1);
      v[k] = gamma_lower(pt, Slope(s));
    }
    // Allowed shape: non-decreasing, then non-increasing.
    const double slack = 1e-12 + 1e-12 * *std::max_element(v.begin(), v.end());
    bool falling = false;
    for (int k = 1; k < kScan; ++k) {
      if (v[k] < v[k - 1] - slack) falling = true;
      if (falling && v[k] > v[k - 1] + slack) return 1;
    }
    return 0;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    rep.check(bad[i] == 0, "interior minimum in s at c=" + detail::fmt(pts[i].c) + " p=" + detail::fmt(pts[i].p));
  }
  for (const auto& pt : optimal_slope_points()) {
    const double diff = std::fabs(optimal_slope(pt).s_star - solve_stationarity(pt));
    rep.metric = std::max(rep.metric, diff);
    rep.check(diff <= 1e-4, "golden vs stationarity root at c=" + detail::fmt(pt.c) + " p=" + detail::fmt(pt.p));
  }
  return rep;
}

/// s*(c,p) >= p, non-decreasing in p and non-increasing in c on A × B.
inline VerifyReport verify_s_star_monotone() {
  VerifyReport rep{"s-star-monotone"};
  rep.metric_name = "max violation";
  const auto cs = grids::capacities_a();
  const auto ps = grids::mcrs_b();
  const auto s = parallel_map<double>(cs.size() * ps.size(), [&](std::size_t k) {
    return optimal_slope(EvalPoint(cs[k / ps.size()], ps[k % ps.size()])).s_star;
  });
  auto at = [&](std::size_t i, std::size_t j) { return s[i * ps.size() + j]; };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      rep.check(at(i, j) >= ps[j] - kMonotoneSlack, "s* < p at c=" + detail::fmt(cs[i]) + " p=" + detail::fmt(ps[j]));
      if (j + 1 < ps.size()) {
        const double drop = at(i, j) - at(i, j + 1);
        rep.metric = std::max(rep.metric, drop);
        rep.check(drop <= kMonotoneSlack, "s* decreases in p at c=" + detail::fmt(cs[i]) + " p=" + detail::fmt(ps[j]));
      }
      if (i + 1 < cs.size()) {
        const double rise = at(i + 1, j) - at(i, j);
        rep.metric = std::max(rep.metric, rise);
        rep.check(rise <= kMonotoneSlack, "s* increases in c at c=" + detail::fmt(cs[i]) + " p=" + detail::fmt(ps[j]));
      }
    }
  }
  return rep;
}

/// F*(b/p, p) is non-decreasing in p on [1e-5, 1) for
/// b ∈ {0.1 i : 1 <= i <= 100} ∪ {0.01, b*, 100}.
inline VerifyReport verify_f_star_monotone() {
  VerifyReport rep{"f-star-monotone"};
  rep.metric_name = "max decrease";
  std::vector<double> bs{0.01, cached_minimax_constants().b_star};
  for (int i = 1; i <= 100; ++i) bs.push_back(0.1 * i);
  std::sort(bs.begin(), bs.end());
  auto ps = grids::log_spaced(1e-5, 1e-3, 21);
  ps.pop_back();
  for (double p : grids::mcrs_b()) ps.push_back(p);
  const auto f = parallel_map<double>(bs.size() * ps.size(), [&](std::size_t k) {
    const double b = bs[k / ps.size()];
    const double p = ps[k % ps.size()];
    return f_star(EvalPoint(b / p, p));
  });
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ps.size(); ++j) {
      const double drop = f[i * ps.size() + j] - f[i * ps.size() + j + 1];
      rep.metric = std::max(rep.metric, drop);
      rep.check(drop <= kMonotoneSlack, "F*(b/p,p) decreases at b=" + detail::fmt(bs[i]) + " p=" + detail::fmt(ps[j]));
    }
  }
  return rep;
}

/// s*(b/p,p)/p converges to the finite α̂(b) as p -> 0.
inline VerifyReport verify_alpha_finite() {
  VerifyReport rep{"alpha-finite"};
  rep.metric_name = "max |s*(b/p,p)/(p alpha_hat(b)) - 1| at p=1e-5";
  const auto table = alpha_limits_table();
  for (const auto& row : table.rows) {
    const double b = row.front();
    const double alpha = row.back();
    rep.check(std::isfinite(alpha) && alpha >= 1.0, "alpha_hat not finite at b=" + detail::fmt(b));
    // Columns 1..5 are p = 1e-1 ... 1e-5; the distance to α̂ must shrink.
    for (std::size_t k = 2; k + 1 < row.size(); ++k) {
      rep.check(std::fabs(row[k] - alpha) <= std::fabs(row[k - 1] - alpha) + kMonotoneSlack,
                "ratio moves away from alpha_hat at b=" + detail::fmt(b));
    }
    const double err = std::fabs(row[row.size() - 2] / alpha - 1.0);
    rep.metric = std::max(rep.metric, err);
    rep.check(err <= 1e-3, "ratio at p=1e-5 off alpha_hat by " + detail::fmt(err) + " (relative) at b=" + detail::fmt(b));
  }
  return rep;
}

/// Saddle point for p ∈ A ∩ (0,1): both sides agree and random probes
/// satisfy F(c×, s) <= F× <= F(c, s×).
inline VerifyReport verify_saddle() {
  VerifyReport rep{"saddle"};
  rep.metric_name = "max |maximin - minimax|";
  std::vector<double> ps;
  for (double a : grids::capacities_a()) {
    if (a < 1.0) ps.push_back(a);
  }
  struct Outcome {
    double gap{0.0};
    int probe_failures{0};
  };
  const auto out = parallel_map<Outcome>(ps.size(), [&](std::size_t i) {
    const double p = ps[i];
    const auto sp = saddle_point(p);
    const auto mm = maximin_side(p);
    Outcome o;
    o.gap = std::fabs(sp.f_times - mm.value);
    SplitMix64 rng(0x5add1e + i);
    const double log_lo = std::log(1e-3 * p / (1.0 - p));
    const double log_hi = std::log(1e6 / p);
    for (int k = 0; k < 200; ++k) {
      const double s = std::max(1e-9, 1.0 - rng.uniform());
      const double c = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
      if (nominal_factor(EvalPoint(sp.c_times, p), Slope(s)) > sp.f_times + kMonotoneSlack) ++o.probe_failures;
      if (nominal_factor(EvalPoint(c, p), Slope(sp.s_times)) < sp.f_times - kMonotoneSlack) ++o.probe_failures;
    }
    return o;
  });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    rep.metric = std::max(rep.metric, out[i].gap);
    rep.check(out[i].gap <= 1e-6, "maximin and minimax differ by " + detail::fmt(out[i].gap) + " at p=" + detail::fmt(ps[i]));
    rep.check(out[i].probe_failures == 0, "saddle inequality violated at p=" + detail::fmt(ps[i]));
  }
  return rep;
}

/// Large-c and small-p limits: s* -> p and s* = 1 for small c; F̲*_c -> F̲*
/// and c p*(c) -> b*; p c× -> b*, s×/p -> a*, F×_p -> F̲*; G_p(c,s)
/// non-decreasing in c with G⁺ -> 1/2; G_p(s×(p)) increasing to (a*-ln a*)/2.
inline VerifyReport verify_limits() {
  VerifyReport rep{"limits"};
  rep.metric_name = "|p c×(p) - b*| at p=1e-5";
  const auto& mc = cached_minimax_constants();

  for (double p : grids::mcrs_b1()) {
    const double s = optimal_slope(EvalPoint(1e6 / p, p)).s_star;
    rep.check(std::fabs(s / p - 1.0) <= 0.01, "s*(1e6/p, p) not within 1% of p at p=" + detail::fmt(p));
    const double c_small = p / (1.0 - p) / 2.0;
    rep.check(optimal_slope(EvalPoint(c_small, p)).s_star == 1.0, "s* != 1 for c <= p/(1-p) at p=" + detail::fmt(p));
  }

  rep.check(mc.unimodal_scan_ok, "Gamma0(., b*) scan found a second maximum");
  double prev_f = std::numeric_limits<double>::infinity();
  double prev_b = std::numeric_limits<double>::infinity();
  for (double c : {1e2, 1e3, 1e4}) {
    const auto w = worst_p_for_c(c);
    const double df = std::fabs(w.f_lower_bar - mc.f_lower_bar);
    const double db = std::fabs(c * w.p_star - mc.b_star);
    rep.check(df < prev_f && db < prev_b, "worst-case MCR not converging at c=" + detail::fmt(c));
    rep.check(w.f_lower_bar >= mc.f_lower_bar - kMonotoneSlack, "F_lower_bar_c below the limit at c=" + detail::fmt(c));
    prev_f = df;
    prev_b = db;
  }

  prev_f = std::numeric_limits<double>::infinity();
  prev_b = std::numeric_limits<double>::infinity();
  double prev_a = std::numeric_limits<double>::infinity();
  double prev_ft = std::numeric_limits<double>::infinity();
  for (double p : alpha_table_p_values()) {
    const auto sp = saddle_point(p);
    const double db = std::fabs(p * sp.c_times - mc.b_star);
    const double da = std::fabs(sp.s_times / p - mc.a_star);
    rep.check(db < prev_b && da < prev_a, "p c× or s×/p not converging at p=" + detail::fmt(p));
    rep.check(sp.f_times < prev_ft, "F×_p not decreasing as p -> 0 at p=" + detail::fmt(p));
    rep.check(sp.f_times >= mc.f_lower_bar - kMonotoneSlack, "F×_p below F_lower_bar* at p=" + detail::fmt(p));
    prev_b = db;
    prev_a = da;
    prev_ft = sp.f_times;
    if (p == 1e-5) {
      rep.metric = db;
      rep.check(db <= 2e-3 && da <= 2e-3, "limits at p=1e-5 off (b*, a*)");
    }
  }

  const auto cs = grids::capacities_a();
  for (double p : grids::mcrs_b1()) {
    for (int k = 1; k <= 20; ++k) {
      const double s = 0.05 * k;
      double prev = -1.0;
      for (double c : cs) {
        const double g = nominal_gap(EvalPoint(c, p), Slope(s));
        rep.check(g >= prev - kMonotoneSlack, "G_p(c,s) decreases in c at p=" + detail::fmt(p) + " s=" + detail::fmt(s) + " c=" + detail::fmt(c));
        prev = g;
      }
    }
  }
  for (double p : grids::mcrs_b()) {
    rep.check(additive_universal(p).g_plus <= 0.5, "G+_p exceeds 1/2 at p=" + detail::fmt(p));
  }
  const double g_small = additive_universal(1e-4).g_plus;
  rep.check(g_small > 0.499 && g_small < 0.5, "G+_p at p=1e-4 not in (0.499, 0.5)");

  const double sup = g_times_sup();
  const auto ps = grids::log_spaced(1e-4, 0.99, 50);
  const auto curve = parallel_map<double>(ps.size(), [&](std::size_t i) { return g_times_curve(ps[i]); });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    rep.check(curve[i] <= sup, "G_p(s×(p)) above (a*-ln a*)/2 at p=" + detail::fmt(ps[i]));
    if (i > 0) rep.check(curve[i - 1] > curve[i], "G_p(s×(p)) not increasing as p -> 0 at p=" + detail::fmt(ps[i]));
  }
  return rep;
}

struct STimesApproxScan {
  double max_error{0.0};
  double worst_p{0.0};
};

/// max over p ∈ {0.001 i : 1 <= i <= 1000} of |ŝ×(p) - s×(p)|; s×(1) = 1.
inline STimesApproxScan s_times_approx_scan() {
  const auto err = parallel_map<double>(1000, [](std::size_t i) {
    const double p = 0.001 * double(i + 1);
    const double exact = i + 1 == 1000 ? 1.0 : saddle_point(p).s_times;
    return std::fabs(s_times_approx(p) - exact);
  });
  const auto it = std::max_element(err.begin(), err.end());
  return {*it, 0.001 * double(it - err.begin() + 1)};
}

inline VerifyReport verify_s_times_approx() {
  VerifyReport rep{"s-times-approx"};
  rep.metric_name = "max |s_times_approx - s_times|";
  const auto scan = s_times_approx_scan();
  rep.metric = scan.max_error;
  rep.check(scan.max_error < 0.0015, "approximation error " + detail::fmt(scan.max_error) + " at p=" + detail::fmt(scan.worst_p));
  rep.notes.push_back("worst p = " + detail::fmt(scan.worst_p));
  return rep;
}

inline std::optional<VerifyReport> run_verify(std::string_view name) {
  if (name == "unimodal") return verify_unimodal();
  if (name == "s-star-monotone") return verify_s_star_monotone();
  if (name == "f-star-monotone") return verify_f_star_monotone();
  if (name == "alpha-finite") return verify_alpha_finite();
  if (name == "saddle") return verify_saddle();
  if (name == "limits") return verify_limits();
  if (name == "s-times-approx") return verify_s_times_approx();
  return std::nullopt;
}

}  // namespace ehlin
