#pragma once

// Reference tables, regenerated from the library.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ehlin/asymptotics.hpp"
#include "ehlin/grids.hpp"
#include "ehlin/io.hpp"
#include "ehlin/parallel.hpp"
#include "ehlin/slope_opt.hpp"
#include "ehlin/universal.hpp"

namespace ehlin {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline constexpr std::array<std::string_view, 5> kTableNames = {
    "f-star-infimum", "optimal-slopes", "alpha-limits", "saddle-points", "c-s-times-limits"};

/// (c, p) ∈ {10^-2, ..., 10^3} × B1 with c > p/(1-p); rows ordered by c, then p.
inline std::vector<EvalPoint> optimal_slope_points() {
  std::vector<EvalPoint> out;
  for (double c : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    for (double p : grids::mcrs_b1()) {
      if (c > p / (1.0 - p)) out.emplace_back(c, p);
    }
  }
  return out;
}

/// c, p, s* (golden-section), Γ̲(s*), s*_2 (stationarity root), Γ̲(s*_2).
inline Table optimal_slopes_table() {
  const auto pts = optimal_slope_points();
  Table t{"optimal-slopes", {"c", "p", "s_star", "gamma_lower", "s_star_2", "gamma_lower_2"}, {}};
  t.rows = parallel_map<std::vector<double>>(pts.size(), [&](std::size_t i) {
    const auto& pt = pts[i];
    const auto r = optimal_slope(pt);
    const double s2 = solve_stationarity(pt);
    return std::vector<double>{pt.c, pt.p, r.s_star, r.gamma_at_star, s2, gamma_lower(pt, Slope(s2))};
  });
  return t;
}

/// c, p*(c), min_p F*(c,p), c p*(c) for c = 10^-3 ... 10^6.
inline Table f_star_infimum_table() {
  const auto cs = grids::capacities_a1();
  Table t{"f-star-infimum", {"c", "p_star", "f_lower_bar", "c_p_star"}, {}};
  t.rows = parallel_map<std::vector<double>>(cs.size(), [&](std::size_t i) {
    const auto w = worst_p_for_c(cs[i]);
    return std::vector<double>{cs[i], w.p_star, w.f_lower_bar, cs[i] * w.p_star};
  });
  return t;
}

inline std::vector<double> alpha_table_b_values() {
  return {0.001, 0.01, 0.1, 0.5, 1.0, 1.5, 1.7938, 2.0, 2.5, 3.0};
}

inline std::vector<double> alpha_table_p_values() { return {0.1, 0.01, 0.001, 1e-4, 1e-5}; }

/// b, s*(b/p,p)/p for p = 10^-1 ... 10^-5, α̂(b).
inline Table alpha_limits_table() {
  const auto bs = alpha_table_b_values();
  const auto ps = alpha_table_p_values();
  Table t{"alpha-limits", {"b"}, {}};
  for (double p : ps) t.header.push_back("ratio_p_" + format_number(p));
  t.header.push_back("alpha_hat");
  t.rows = parallel_map<std::vector<double>>(bs.size(), [&](std::size_t i) {
    std::vector<double> row{bs[i]};
    for (double p : ps) row.push_back(optimal_slope(EvalPoint(bs[i] / p, p)).s_star / p);
    row.push_back(alpha_hat(bs[i]));
    return row;
  });
  return t;
}

/// p, then value and point (c, s) of the max-min side and of the min-max side.
inline Table saddle_points_table() {
  const auto ps = grids::mcrs_b1();
  Table t{"saddle-points",
          {"p", "maximin_value", "maximin_c", "maximin_s", "minimax_value", "minimax_c", "minimax_s"},
          {}};
  t.rows = parallel_map<std::vector<double>>(ps.size(), [&](std::size_t i) {
    const auto mm = maximin_side(ps[i]);
    const auto sp = saddle_point(ps[i]);
    return std::vector<double>{ps[i], mm.value, mm.c, mm.s, sp.f_times, sp.c_times, sp.s_times};
  });
  return t;
}

/// p, c×(p), s×(p), p c×(p), s×(p)/p for p = 10^-1 ... 10^-5.
inline Table c_s_times_limits_table() {
  const auto ps = alpha_table_p_values();
  Table t{"c-s-times-limits", {"p", "c_times", "s_times", "p_c_times", "s_times_over_p"}, {}};
  t.rows = parallel_map<std::vector<double>>(ps.size(), [&](std::size_t i) {
    const auto sp = saddle_point(ps[i]);
    return std::vector<double>{ps[i], sp.c_times, sp.s_times, ps[i] * sp.c_times, sp.s_times / ps[i]};
  });
  return t;
}

inline std::optional<Table> make_table(std::string_view name) {
  if (name == "f-star-infimum") return f_star_infimum_table();
  if (name == "optimal-slopes") return optimal_slopes_table();
  if (name == "alpha-limits") return alpha_limits_table();
  if (name == "saddle-points") return saddle_points_table();
  if (name == "c-s-times-limits") return c_s_times_limits_table();
  return std::nullopt;
}

}  // namespace ehlin
