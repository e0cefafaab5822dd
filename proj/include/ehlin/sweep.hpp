#pragma once

// One-dimensional sweeps with adaptive refinement, for figure data.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ehlin/io.hpp"
#include "ehlin/linear_perf.hpp"
#include "ehlin/parallel.hpp"
#include "ehlin/slope_opt.hpp"
#include "ehlin/universal.hpp"

namespace ehlin {

/// Adjacent samples are accepted once |u - u'| <= kSweepStepTol or their
/// Euclidean distance in the (u, f) plane is <= kSweepCurveTol.
inline constexpr double kSweepStepTol = 1e-4;
inline constexpr double kSweepCurveTol = 1e-3;

inline constexpr std::array<std::string_view, 7> kSweepQuantities = {
    "gamma-lower", "f-star", "g-star", "s-star", "s-times", "g-times-curve", "gap-limit"};

struct SweepSpec {
  std::string variable;  // c, p, s or b
  std::string quantity;
  // Explicit points, sorted and evaluated without refinement. Otherwise `range`
  // (or the variable's natural domain) is sampled adaptively.
  std::optional<std::vector<double>> grid;
  std::optional<std::pair<double, double>> range;
  // Sample in u with c = u / (1 - u).
  bool transform{false};
  bool refine{true};
  // Values of the variables held fixed. b, when set, ties c = b / p.
  double c{10.0};
  double p{0.5};
  double s{0.5};
  std::optional<double> b;
  double tol{kDefaultSeriesTol};  // series tolerance for gamma-lower
  std::size_t max_points{200'000};
};

struct SweepResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // Refinement stopped at max_points before every pair met the tolerance.
  bool truncated{false};
};

namespace detail {

inline bool is_unbounded_variable(std::string_view v) { return v == "c" || v == "b"; }

// Maps the sweep variable x to the quantity's value columns.
inline std::function<std::vector<double>(double)> sweep_evaluator(const SweepSpec& spec) {
  const std::string& v = spec.variable;
  const std::string& q = spec.quantity;
  auto point = [spec](double x) {
    double c = spec.c, p = spec.p;
    if (spec.variable == "c") c = x;
    if (spec.variable == "p") p = x;
    if (spec.variable == "b") c = x / p;
    else if (spec.b && spec.variable != "c") c = *spec.b / p;
    return EvalPoint(c, p);
  };
  if (q == "gamma-lower") {
    return [spec, point](double x) {
      const double s = spec.variable == "s" ? x : spec.s;
      return std::vector<double>{gamma_lower(point(x), Slope(s), spec.tol)};
    };
  }
  if (q == "f-star" || q == "g-star" || q == "s-star") {
    if (v == "s") throw UsageError("sweep: " + q + " does not depend on s");
    return [q, point](double x) {
      const auto r = optimal_slope(point(x));
      return std::vector<double>{q == "f-star" ? r.f_star : q == "g-star" ? r.g_star : r.s_star};
    };
  }
  if (q == "s-times" || q == "g-times-curve") {
    if (v != "p") throw UsageError("sweep: " + q + " is a function of p only");
    if (q == "s-times") {
      return [](double p) {
        const double st = saddle_point(p).s_times;
        const double approx = s_times_approx(p);
        return std::vector<double>{st, approx, approx - st};
      };
    }
    return [](double p) { return std::vector<double>{g_times_curve(p)}; };
  }
  if (q == "gap-limit") {
    if (v != "p" && v != "s") throw UsageError("sweep: gap-limit is a function of p and s");
    return [spec](double x) {
      const double p = spec.variable == "p" ? x : spec.p;
      const double s = spec.variable == "s" ? x : spec.s;
      return std::vector<double>{gap_limit(p, s)};
    };
  }
  std::string names;
  for (auto n : kSweepQuantities) names += (names.empty() ? "" : ", ") + std::string(n);
  throw UsageError("sweep: unknown quantity '" + q + "' (valid: " + names + ")");
}

inline std::vector<std::string> sweep_header(const SweepSpec& spec) {
  std::vector<std::string> h{spec.variable};
  if (spec.quantity == "s-times") {
    h.insert(h.end(), {"s_times", "s_times_approx", "approx_minus_exact"});
  } else {
    std::string col = spec.quantity;
    std::replace(col.begin(), col.end(), '-', '_');
    h.push_back(col);
  }
  return h;
}

}  // namespace detail

/// Evaluates spec.quantity along spec.variable. Rows are sorted by x.
inline SweepResult run_sweep(const SweepSpec& spec) {
  const std::string& v = spec.variable;
  if (v != "c" && v != "p" && v != "s" && v != "b") {
    throw UsageError("sweep: variable must be one of c, p, s, b");
  }
  if (spec.transform && !detail::is_unbounded_variable(v)) {
    throw UsageError("sweep: the c'/(1-c') transform applies to c or b only");
  }
  auto eval = detail::sweep_evaluator(spec);

  const double inf = std::numeric_limits<double>::infinity();
  std::pair<double, double> range;
  if (spec.range) {
    range = *spec.range;
  } else if (v == "p") {
    range = {kSweepStepTol, 1.0 - kSweepStepTol};
  } else if (v == "s") {
    range = {kSweepStepTol, 1.0};
  } else {
    range = {0.0, inf};
  }
  if (!spec.grid && detail::is_unbounded_variable(v) && std::isinf(range.second) && !spec.transform) {
    throw UsageError("sweep: " + v + " has an unbounded domain; give a finite --range or use --transform");
  }
  if (!(range.first < range.second)) throw UsageError("sweep: range must satisfy lo < hi");

  // Sampling coordinate u and its inverse map to x.
  auto to_x = [&](double u) { return spec.transform ? u / (1.0 - u) : u; };
  auto to_u = [&](double x) { return spec.transform ? (std::isinf(x) ? 1.0 : x / (1.0 + x)) : x; };

  std::vector<double> us;
  if (spec.grid) {
    if (spec.grid->empty()) throw UsageError("sweep: grid is empty");
    auto grid = *spec.grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (double x : grid) us.push_back(to_u(x));
  } else {
    double u_lo = to_u(range.first);
    double u_hi = to_u(range.second);
    if (spec.transform) {
      u_lo = std::max(u_lo, kSweepStepTol);
      u_hi = std::min(u_hi, 1.0 - kSweepStepTol);
    }
    constexpr int kInitial = 33;
    for (int k = 0; k < kInitial; ++k) us.push_back(u_lo + (u_hi - u_lo) * k / (kInitial - 1));
  }

  struct Sample {
    double u;
    std::vector<double> f;
  };
  auto evaluate = [&](const std::vector<double>& at) {
    auto fs = parallel_map<std::vector<double>>(at.size(), [&](std::size_t i) { return eval(to_x(at[i])); });
    std::vector<Sample> out;
    for (std::size_t i = 0; i < at.size(); ++i) out.push_back({at[i], std::move(fs[i])});
    return out;
  };
  std::vector<Sample> samples = evaluate(us);

  SweepResult result;
  result.header = detail::sweep_header(spec);
  while (spec.refine && !spec.grid) {
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const double du = samples[i + 1].u - samples[i].u;
      if (std::fabs(du) <= kSweepStepTol) continue;
      const double df = samples[i + 1].f[0] - samples[i].f[0];
      if (std::isfinite(df) && std::hypot(du, df) <= kSweepCurveTol) continue;
      mids.push_back(samples[i].u + du / 2.0);
    }
    if (mids.empty()) break;
    if (samples.size() + mids.size() > spec.max_points) {
      result.truncated = true;
      break;
    }
    auto added = evaluate(mids);
    std::vector<Sample> merged;
    merged.reserve(samples.size() + added.size());
    std::merge(std::make_move_iterator(samples.begin()), std::make_move_iterator(samples.end()),
               std::make_move_iterator(added.begin()), std::make_move_iterator(added.end()),
               std::back_inserter(merged), [](const Sample& a, const Sample& b) { return a.u < b.u; });
    samples = std::move(merged);
  }
  for (auto& smp : samples) {
    std::vector<double> row{to_x(smp.u)};
    row.insert(row.end(), smp.f.begin(), smp.f.end());
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace ehlin
