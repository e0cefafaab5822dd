// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ehlin/ehlin.hpp"
#include "oracles.hpp"

#ifndef EHLIN_CLI_PATH
#error "EHLIN_CLI_PATH must name the ehlin executable"
#endif

using namespace ehlin;

namespace {

struct Outcome {
  bool pass{true};
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 means no limit
  std::function<void(Outcome&)> run;
};

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

std::string num(double v) { return format_number(v); }

void optimal_slopes(Outcome& o) {
  struct Row { double c, p, s, g; bool loose; };
  const Row rows[] = {
      {0.01, 0.001, 0.481011, 0.000005, true}, {0.1, 0.001, 0.182497, 0.000050, true},
      {0.1, 0.01, 0.485549, 0.000487, false},  {1, 0.001, 0.062051, 0.000485, false},
      {1, 0.01, 0.188597, 0.004560, false},    {1, 0.1, 0.531404, 0.039166, false},
      {10, 0.001, 0.020568, 0.004540, false},  {10, 0.01, 0.068740, 0.037627, false},
      {10, 0.1, 0.251019, 0.236875, false},    {10, 0.5, 0.677521, 0.698589, false},
      {10, 0.9, 0.992232, 1.079208, false},    {100, 0.001, 0.007076, 0.037480, false},
      {100, 0.01, 0.027547, 0.229471, false},  {100, 0.1, 0.141503, 0.855315, false},
      {100, 0.5, 0.545454, 1.650356, false},   {100, 0.9, 0.918506, 2.137336, false},
      {100, 0.99, 0.999903, 2.284485, false},  {1000, 0.001, 0.002781, 0.228762, false},
      {1000, 0.01, 0.014573, 0.838041, false}, {1000, 0.1, 0.109353, 1.857101, false},
      {1000, 0.5, 0.509370, 2.766345, false},  {1000, 0.9, 0.903606, 3.275259, false},
      {1000, 0.99, 0.991160, 3.426725, false}};
  const auto pts = optimal_slope_points();
  o.require(pts.size() == 23, "table has " + std::to_string(pts.size()) + " rows");
  double worst_s = 0.0, worst_g = 0.0, worst_root = 0.0;
  for (const Row& r : rows) {
    const EvalPoint pt(r.c, r.p);
    const auto res = optimal_slope(pt);
    const double ds = std::fabs(res.s_star - r.s);
    const double dg = std::fabs(res.gamma_at_star - r.g);
    o.require(ds <= (r.loose ? 1e-3 : 1e-4), "s* at c=" + num(r.c) + " p=" + num(r.p) + " = " + num(res.s_star));
    o.require(dg <= (r.loose ? 1e-3 : 1e-5), "gamma at c=" + num(r.c) + " p=" + num(r.p));
    worst_s = std::max(worst_s, ds);
    worst_g = std::max(worst_g, dg);
    worst_root = std::max(worst_root, std::fabs(solve_stationarity(pt) - res.s_star));
  }
  o.detail << "max |ds*|=" << num(worst_s) << " max |dGamma|=" << num(worst_g)
           << " max |s*_root - s*|=" << num(worst_root);
}

void worst_ratio_table(Outcome& o) {
  struct Row { double c, p, f, cp, tp, tf, tcp; };
  const Row rows[] = {{1, 0.211543, 0.806004, 2.115430e-01, 2e-4, 1e-5, 2e-3},
                      {10, 0.105229, 0.683399, 1.052286, 2e-4, 1e-5, 2e-3},
                      {100, 0.016660, 0.656616, 1.665987, 2e-4, 1e-5, 2e-3},
                      {1000, 0.001780, 0.653408, 1.779910, 2e-4, 1e-5, 2e-3},
                      {1e6, 0.000002, 0.653043, 1.793795, 2e-6, 1e-5, 5e-3}};
  for (const Row& r : rows) {
    const auto w = worst_p_for_c(r.c);
    o.require(near(w.p_star, r.p, r.tp), "p* at c=" + num(r.c) + " = " + num(w.p_star));
    o.require(near(w.f_lower_bar, r.f, r.tf), "F at c=" + num(r.c) + " = " + num(w.f_lower_bar));
    o.require(near(r.c * w.p_star, r.cp, r.tcp), "c p* at c=" + num(r.c) + " = " + num(r.c * w.p_star));
    if (r.c == 1e6) o.detail << "c=1e6: p*=" << num(w.p_star) << " F=" << num(w.f_lower_bar) << ' ';
  }
}

void minimax(Outcome& o) {
  const auto m = minimax_constants();
  o.require(near(m.a_star, 2.2847, 5e-4), "a*=" + num(m.a_star));
  o.require(near(m.b_star, 1.7938, 5e-4), "b*=" + num(m.b_star));
  o.require(near(m.f_lower_bar, 0.6530, 5e-4), "F*=" + num(m.f_lower_bar));
  o.detail << "a*=" << num(m.a_star) << " b*=" << num(m.b_star) << " F*=" << num(m.f_lower_bar);
}

void saddles(Outcome& o) {
  struct Row { double p, value, c, s; };
  const Row rows[] = {{0.001, 0.653247, 1795.415904, 0.002282}, {0.01, 0.655090, 181.016024, 0.022600},
                      {0.1, 0.674155, 19.712069, 0.205705},     {0.5, 0.776854, 6.509980, 0.720563},
                      {0.9, 0.935771, 15.180150, 0.967304},     {0.99, 0.992095, 125.323729, 0.997956}};
  const auto results = parallel_map<std::pair<SaddleResult, SaddleSide>>(6, [&](std::size_t i) {
    return std::pair{saddle_point(rows[i].p), maximin_side(rows[i].p)};
  });
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& r = rows[i];
    const auto& [sp, mm] = results[i];
    o.require(near(sp.f_times, r.value, 1e-5), "F at p=" + num(r.p) + " = " + num(sp.f_times));
    o.require(near(sp.s_times, r.s, 1e-4), "s at p=" + num(r.p) + " = " + num(sp.s_times));
    o.require(near(sp.c_times, r.c, 1e-3 * r.c), "c at p=" + num(r.p) + " = " + num(sp.c_times));
    worst_gap = std::max(worst_gap, std::fabs(mm.value - sp.f_times));
  }
  o.require(worst_gap <= 1e-6, "maximin/minimax gap " + num(worst_gap));
  o.detail << "max |maximin - minimax|=" << num(worst_gap);
}

void saddle_limits(Outcome& o) {
  const double p = 1e-5;
  const auto sp = saddle_point(p);
  o.require(near(p * sp.c_times, 1.793811, 2e-3), "p c = " + num(p * sp.c_times));
  o.require(near(sp.s_times / p, 2.284725, 2e-3), "s/p = " + num(sp.s_times / p));
  o.detail << "p c=" << num(p * sp.c_times) << " s/p=" << num(sp.s_times / p);
}

void approx_quality(Outcome& o) {
  const auto scan = s_times_approx_scan();
  o.require(scan.max_error < 0.0015, "max error " + num(scan.max_error));
  o.detail << "observed max |approx - exact|=" << num(scan.max_error) << " at p=" << num(scan.worst_p);
}

void gap_curve(Outcome& o) {
  const double sup = g_times_sup();
  o.require(near(sup, 0.7292, 5e-4), "sup=" + num(sup));
  const auto ps = grids::log_spaced(1e-5, 0.9, 50);
  const auto g = parallel_map<double>(ps.size(), [&](std::size_t i) { return g_times_curve(ps[i]); });
  for (std::size_t i = 0; i < ps.size(); ++i) {
    o.require(g[i] < sup, "curve above sup at p=" + num(ps[i]));
    if (i > 0) o.require(g[i - 1] > g[i], "curve not increasing as p falls at p=" + num(ps[i - 1]));
  }
  o.detail << "sup=" << num(sup) << " curve at p=1e-5: " << num(g.front());
}

void greedy_exactness(Outcome& o) {
  oracle::Gen gen(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double p = gen.uniform(0.01, 0.99);
    const double c = p / (1.0 - p) * gen.log_uniform(1.0, 1e4);
    const double err = std::fabs(greedy_threshold(bernoulli_extremal(c, p)) - p / (1.0 - p)) / (1.0 + p / (1.0 - p));
    worst = std::max(worst, err);
  }
  o.require(worst <= 1e-12, "bernoulli threshold error " + num(worst));
  for (int i = 0; i < 50; ++i) {
    const double xl = gen.uniform(0.0, 3.0);
    const auto b = clipped_bounds(xl, xl + gen.uniform(0.0, 5.0));
    o.require(near(greedy_threshold(*b.attaining_hi), b.c_hi, 1e-12 * (1.0 + b.c_hi)), "clipped attainer");
  }
  double worst_fp = 0.0;
  for (int k = 1; k <= 7; ++k) {
    const double p = 0.1 * k;
    const auto r = mcr_upper(p);
    o.require(near(greedy_threshold(*r.attaining_hi), r.c_hi, 1e-12), "mcr attainer at p=" + num(p));
    // Independent fixed-point iteration c <- upper clipped bound at (0, p c).
    double c = 1.0;
    for (int it = 0; it < 100000; ++it) {
      const double mu = p * c;
      const double next = mu < 0.5 ? (mu + std::sqrt(mu * mu + 4.0 * mu)) / 2.0 : (4.0 * mu + 1.0) / 3.0;
      if (std::fabs(next - c) < 1e-15 * (1.0 + c)) break;
      c = next;
    }
    worst_fp = std::max(worst_fp, std::fabs(c - r.c_hi));
  }
  o.require(worst_fp <= 1e-9, "fixed point error " + num(worst_fp));
  o.detail << "max fixed-point error=" << num(worst_fp);
}

DiscreteDistribution two_atom(double a, double b, double mu) {
  if (b == a) return DiscreteDistribution::degenerate(a);
  const double pb = (mu - a) / (b - a);
  return DiscreteDistribution({{a, 1.0 - pb}, {b, pb}});
}

void oracle_sandwich(Outcome& o) {
  struct Fam { double lo, hi, mu; };
  const Fam fams[] = {{0.0, 2.0, 0.5}, {0.0, 1.0, 0.3}, {0.5, 4.0, 1.0}, {1.0, 3.0, 2.0}, {2.0, 6.0, 3.0},
                      {0.0, 3.0, 2.5}};
  oracle::Gen gen(99);
  double worst = 0.0;
  for (const Fam& f : fams) {
    const auto r = c_bounds_interval_mean(IntervalMeanFamily(f.lo, f.hi, f.mu));
    for (int i = 0; i < 1000; ++i) {
      const double t = greedy_threshold(two_atom(gen.uniform(f.lo, f.mu), gen.uniform(f.mu, f.hi), f.mu));
      o.require(t >= r.c_lo - 1e-9 && t <= r.c_hi + 1e-9, "threshold outside bounds");
    }
    double mn = INFINITY, mx = 0.0;
    constexpr int n = 199;  // 200 points per axis
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double a = f.lo + (f.mu - f.lo) * i / n;
        const double b = f.mu + (f.hi - f.mu) * j / n;
        const double t = greedy_threshold(two_atom(a, b, f.mu));
        mn = std::min(mn, t);
        mx = std::max(mx, t);
      }
    }
    const double rel_lo = std::fabs(mn - r.c_lo) / r.c_lo;
    const double rel_hi = std::fabs(mx - r.c_hi) / r.c_hi;
    o.require(rel_lo <= 0.01 && rel_hi <= 0.01, "grid extremes of (" + num(f.lo) + "," + num(f.hi) + "," + num(f.mu) + ")");
    worst = std::max({worst, rel_lo, rel_hi});
  }
  o.detail << "worst grid relative gap=" << num(worst);
  // Wide families need finer grids: a 200-point axis on [1, 10] steps by 0.045.
  const auto wide = c_bounds_interval_mean(IntervalMeanFamily(0.0, 10.0, 1.0));
  double wide_max = 0.0;
  for (int i = 0; i <= 199; ++i) {
    for (int j = 0; j <= 199; ++j) {
      wide_max = std::max(wide_max, greedy_threshold(two_atom(i / 199.0, 1.0 + 9.0 * j / 199.0, 1.0)));
    }
  }
  o.detail << "; info: (0,10,1) grid max is " << num(std::fabs(wide_max - wide.c_hi) / wide.c_hi)
           << " below c_hi";
}

void simulation(Outcome& o) {
  struct Combo { double c, p; };
  const Combo combos[] = {{1, 0.1}, {1, 0.3}, {1, 0.45}, {10, 0.1}, {10, 0.5}, {10, 0.9},
                          {100, 0.01}, {100, 0.5}, {100, 0.9}};
  const auto z = parallel_map<double>(9, [&](std::size_t i) {
    const auto [c, p] = combos[i];
    const double s = optimal_slope(EvalPoint(c, p)).s_star;
    SimConfig cfg{c, bernoulli_extremal(c, p), linear_policy(Slope(s)), 1'000'000, 10'000, 1000 + i};
    const auto rep = simulate(cfg);
    const double want = gamma_lower(EvalPoint(c, p), Slope(s));
    return rep.std_error > 0 ? (rep.throughput_estimate - want) / rep.std_error : (rep.throughput_estimate == want ? 0.0 : INFINITY);
  });
  double worst = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    o.require(std::fabs(z[i]) <= 4.0, "z=" + num(z[i]) + " at c=" + num(combos[i].c) + " p=" + num(combos[i].p));
    worst = std::max(worst, std::fabs(z[i]));
  }
  SimConfig cfg{10.0, bernoulli_extremal(10.0, 0.5), linear_policy(Slope(0.6)), 1'000'000, 10'000, 17};
  o.require(sim_csv_row(simulate(cfg)) == sim_csv_row(simulate(cfg)), "replay differs");
  o.detail << "max |z|=" << num(worst);
}

void finite_p_sandwich(Outcome& o) {
  for (double a : {1.0, 2.0, 3.0}) {
    for (double b : {0.5, 1.7938, 3.0}) {
      double prev = INFINITY;
      for (double p : {1e-2, 1e-3, 1e-4}) {
        const auto r = sandwich_check(a, b, p);
        const std::string at = "(a,b,p)=(" + num(a) + "," + num(b) + "," + num(p) + ")";
        o.require(r.contained(), "not contained at " + at);
        o.require(std::fabs(r.delta) < prev, "|delta| not decreasing at " + at);
        prev = std::fabs(r.delta);
      }
    }
  }
}

void verify_suites(Outcome& o) {
  for (auto suite : kVerifySuites) {
    const std::string cmd = std::string(EHLIN_CLI_PATH) + " --no-meta verify " + std::string(suite) + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.require(code == 0, std::string(suite) + " exited " + std::to_string(code));
    o.detail << suite << "=" << code << ' ';
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "optimal slopes table", 30, optimal_slopes},
      {2, "worst mean-to-capacity ratio table", 120, worst_ratio_table},
      {3, "minimax constants", 60, minimax},
      {4, "saddle points table", 0, saddles},
      {5, "saddle point limits", 0, saddle_limits},
      {6, "closed-form saddle slope accuracy", 300, approx_quality},
      {7, "additive gap supremum and curve", 0, gap_curve},
      {8, "greedy threshold exactness", 0, greedy_exactness},
      {9, "threshold bounds oracle sandwich", 0, oracle_sandwich},
      {10, "simulation cross-validation", 120, simulation},
      {11, "finite-p sandwich", 0, finite_p_sandwich},
      {12, "verification suites", 0, verify_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0) o.require(secs < c.time_limit_s, "runtime " + num(secs) + " s over limit");
    std::printf("%s %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
