// ehlin: command-line front end to the linear power-control toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ehlin/ehlin.hpp"

namespace {

using namespace ehlin;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerifyFailed = 3;

struct GlobalOptions {
  std::string out;
  bool no_meta{false};
  double tol{kDefaultSeriesTol};
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
};

// stdout, or the --out file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError(path + ": cannot open for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

template <std::size_t N>
std::string join_names(const std::array<std::string_view, N>& names) {
  std::string out;
  for (auto n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

int cmd_table(const GlobalOptions& g, const std::string& name) {
  const auto table = make_table(name);
  if (!table) throw UsageError("unknown table '" + name + "' (valid: " + join_names(kTableNames) + ")");
  Sink sink(g.out);
  CsvWriter csv(sink.stream(), table->header, !g.no_meta, "table " + name);
  for (const auto& row : table->rows) csv.row(row);
  return kExitOk;
}

struct SweepArgs {
  std::string variable;
  std::string quantity;
  std::string grid;
  std::vector<double> points;
  std::vector<std::string> range;
  bool transform{false};
  bool no_refine{false};
  double c{10.0};
  double p{0.5};
  double s{0.5};
  std::optional<double> b;
};

double parse_bound(const std::string& text) {
  double v = 0.0;
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (!detail::parse_double(text, v)) throw UsageError("sweep: bad range bound '" + text + "'");
  return v;
}

int cmd_sweep(const GlobalOptions& g, const SweepArgs& a) {
  SweepSpec spec;
  spec.variable = a.variable;
  spec.quantity = a.quantity;
  spec.transform = a.transform;
  spec.refine = !a.no_refine;
  spec.c = a.c;
  spec.p = a.p;
  spec.s = a.s;
  spec.b = a.b;
  spec.tol = g.tol;
  if (!a.grid.empty()) {
    auto named = grids::named(a.grid);
    if (!named) throw UsageError("sweep: unknown grid '" + a.grid + "' (valid: A, B, A1, B1)");
    spec.grid = std::move(named);
  } else if (!a.points.empty()) {
    spec.grid = a.points;
  }
  if (!a.range.empty()) spec.range = std::make_pair(parse_bound(a.range[0]), parse_bound(a.range[1]));
  const auto result = run_sweep(spec);
  if (result.truncated) std::cerr << "warning: refinement stopped at the point cap\n";
  Sink sink(g.out);
  CsvWriter csv(sink.stream(), result.header, !g.no_meta, "sweep " + a.quantity);
  for (const auto& row : result.rows) csv.row(row);
  return kExitOk;
}

struct GreedyArgs {
  std::string file;
  std::vector<double> bounds;
  std::vector<double> clipped;
  std::optional<double> mcr_p;
};

int cmd_greedy(const GlobalOptions& g, const GreedyArgs& a) {
  if (a.file.empty() && a.bounds.empty() && a.clipped.empty() && !a.mcr_p) {
    throw UsageError("greedy: give a distribution file, --bounds, --clipped or --mcr");
  }
  Sink sink(g.out);
  std::ostream& os = sink.stream();
  const bool meta = !g.no_meta;

  std::optional<DiscreteDistribution> q;
  if (!a.file.empty()) {
    q = load_distribution(a.file);
    CsvWriter csv(os, {"c_star", "mean", "atoms"}, meta, "greedy");
    csv.row({greedy_threshold(*q), q->mean(), double(q->size())});
  }
  if (!a.bounds.empty()) {
    const double lo = a.bounds[0], hi = a.bounds[1], mu = a.bounds[2];
    if (!(lo >= 0.0 && lo <= hi)) throw DataError("invariant 0 <= x_lo <= x_hi violated");
    if (!(lo <= mu && mu <= hi)) throw DataError("invariant x_lo <= mu <= x_hi violated");
    const IntervalMeanFamily fam(lo, hi, mu);
    const auto r = c_bounds_interval_mean(fam);
    if (q) {
      if (q->min_value() < lo || q->max_value() > hi) {
        throw DataError("invariant support within [x_lo, x_hi] violated by " + a.file);
      }
      if (std::fabs(q->mean() - mu) > 1e-9 * std::max(1.0, mu)) {
        throw DataError("invariant mean == mu violated by " + a.file + " (mean " + format_number(q->mean()) + ")");
      }
    }
    CsvWriter csv(os, {"x_lo", "x_hi", "mu", "c_lo", "c_hi"}, meta && !q, "greedy --bounds");
    csv.row({lo, hi, mu, r.c_lo, r.c_hi});
  }
  if (!a.clipped.empty()) {
    const double lo = a.clipped[0], mu_bar = a.clipped[1];
    if (!(lo >= 0.0 && lo <= mu_bar)) throw DataError("invariant 0 <= x_lo <= mu_bar violated");
    const auto r = clipped_bounds(lo, mu_bar);
    CsvWriter csv(os, {"x_lo", "mu_bar", "c_lo", "c_hi", "c_star_attainer"}, meta && !q && a.bounds.empty(),
                  "greedy --clipped");
    csv.row({lo, mu_bar, r.c_lo, r.c_hi, greedy_threshold(*r.attaining_hi)});
  }
  if (a.mcr_p) {
    const double p = *a.mcr_p;
    if (!(p > 0.0 && p < 1.0)) throw DataError("invariant 0 < p < 1 violated");
    const auto r = mcr_upper(p);
    CsvWriter csv(os, {"p", "c_lo", "c_hi", "c_star_attainer"},
                  meta && !q && a.bounds.empty() && a.clipped.empty(), "greedy --mcr");
    if (r.unbounded()) {
      csv.row({p, 0.0, r.c_hi, r.c_hi});
      std::cerr << "note: unbounded; witnesses Q3(n) = (2n(1-p)/(n+1)) at (n-1)/2 + ((2pn-n+1)/(n+1)) at n "
                   "have MCR p at capacity n and threshold >= n (n = 10: threshold "
                << format_number(greedy_threshold(r.witness->member(10.0))) << ")\n";
    } else {
      csv.row({p, 0.0, r.c_hi, greedy_threshold(*r.attaining_hi)});
    }
  }
  return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const std::string& name) {
  std::vector<std::string> names;
  if (name == "all") {
    for (auto n : kVerifySuites) names.emplace_back(n);
  } else {
    names.push_back(name);
  }
  Sink sink(g.out);
  CsvWriter csv(sink.stream(), {"suite", "result", "checks", "failures", "metric"}, !g.no_meta,
                "verify " + name);
  bool all_passed = true;
  for (const auto& n : names) {
    const auto rep = run_verify(n);
    if (!rep) throw UsageError("unknown suite '" + n + "' (valid: " + join_names(kVerifySuites) + ", all)");
    csv.write_cells({rep->name, rep->passed ? "PASS" : "FAIL", std::to_string(rep->checks),
                     std::to_string(rep->failures), format_number(rep->metric)});
    std::cerr << rep->name << ": " << rep->metric_name << " = " << format_number(rep->metric) << '\n';
    for (const auto& note : rep->notes) std::cerr << "  " << note << '\n';
    all_passed = all_passed && rep->passed;
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

// Config field access with errors naming the field.
class ConfigReader {
 public:
  ConfigReader(const json& j, std::string source) : j_(j), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw DataError(source_ + ": field '" + field + "': " + what);
  }

  const json* find(const std::string& field) const {
    const auto it = j_.find(field);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& field, std::optional<double> fallback = std::nullopt) const {
    const json* v = find(field);
    if (!v) {
      if (fallback) return *fallback;
      fail(field, "missing");
    }
    if (!v->is_number()) fail(field, "expected a number");
    return v->get<double>();
  }

  std::uint64_t count(const std::string& field, std::optional<std::uint64_t> fallback = std::nullopt) const {
    const json* v = find(field);
    if (!v) {
      if (fallback) return *fallback;
      fail(field, "missing");
    }
    if (!v->is_number_unsigned()) fail(field, "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

 private:
  const json& j_;
  std::string source_;
};

Policy parse_policy(const json& spec, const ConfigReader& cfg, const std::string& field, double c,
                    const DiscreteDistribution& q) {
  if (!spec.is_object()) cfg.fail(field, "expected an object with a \"type\"");
  const auto type_it = spec.find("type");
  if (type_it == spec.end() || !type_it->is_string()) cfg.fail(field + ".type", "expected a string");
  const auto type = type_it->get<std::string>();
  if (type == "greedy") return greedy_policy();
  if (type == "fixed-fraction") return linear_policy(Slope(mcr(q, c)));
  if (type == "linear") {
    const auto s_it = spec.find("slope");
    if (s_it == spec.end() || !s_it->is_number()) cfg.fail(field + ".slope", "expected a number in [0,1]");
    const double s = s_it->get<double>();
    if (!(s >= 0.0 && s <= 1.0)) cfg.fail(field + ".slope", "must lie in [0,1]");
    return linear_policy(Slope(s));
  }
  cfg.fail(field + ".type", "unknown policy '" + type + "' (valid: greedy, linear, fixed-fraction)");
}

int cmd_simulate(const GlobalOptions& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw DataError(path + ": expected a JSON object");
  const ConfigReader cfg(j, path);

  const double c = cfg.number("capacity");
  if (!(c > 0.0) || !std::isfinite(c)) cfg.fail("capacity", "must be finite and > 0");

  std::optional<DiscreteDistribution> q;
  if (const json* d = cfg.find("distribution")) {
    if (!d->is_string()) cfg.fail("distribution", "expected a file path");
    std::filesystem::path file = d->get<std::string>();
    if (file.is_relative()) file = std::filesystem::path(path).parent_path() / file;
    q = load_distribution(file.string());
  } else if (const json* atoms = cfg.find("atoms")) {
    if (!atoms->is_array()) cfg.fail("atoms", "expected [[value, probability], ...]");
    std::vector<Atom> list;
    for (const auto& a : *atoms) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
        cfg.fail("atoms", "expected [[value, probability], ...]");
      }
      list.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    try {
      q = DiscreteDistribution(std::move(list));
    } catch (const std::invalid_argument& e) {
      cfg.fail("atoms", e.what());
    }
  } else {
    cfg.fail("distribution", "missing (or give \"atoms\")");
  }

  std::vector<std::pair<std::string, Policy>> policies;
  if (const json* list = cfg.find("policies")) {
    if (!list->is_array() || list->empty()) cfg.fail("policies", "expected a non-empty array");
    for (std::size_t i = 0; i < list->size(); ++i) {
      const std::string field = "policies[" + std::to_string(i) + "]";
      policies.emplace_back((*list)[i].dump(), parse_policy((*list)[i], cfg, field, c, *q));
    }
  } else if (const json* one = cfg.find("policy")) {
    policies.emplace_back(one->dump(), parse_policy(*one, cfg, "policy", c, *q));
  } else {
    cfg.fail("policy", "missing");
  }

  SimConfig sim;
  sim.c = c;
  sim.q = *q;
  sim.horizon = g.horizon ? *g.horizon : cfg.count("horizon", 1'000'000);
  sim.burn_in = cfg.count("burn_in", std::min<std::uint64_t>(10'000, sim.horizon / 2));
  sim.seed = g.seed ? *g.seed : cfg.count("seed", 1);
  if (const json* b0 = cfg.find("initial_battery")) {
    if (!b0->is_number()) cfg.fail("initial_battery", "expected a number");
    sim.initial_battery = b0->get<double>();
    if (!(sim.initial_battery >= 0.0 && sim.initial_battery <= c)) cfg.fail("initial_battery", "must lie in [0, capacity]");
  }
  if (sim.horizon <= sim.burn_in) cfg.fail("horizon", "must exceed burn_in");
  if (sim.horizon - sim.burn_in < std::uint64_t(kBatchCount)) cfg.fail("horizon", "needs at least 32 steps after burn_in");

  Sink sink(g.out);
  std::ostream& os = sink.stream();
  const bool several = policies.size() > 1;
  std::vector<std::string> header{"seed", "horizon", "throughput", "std_error"};
  if (several) header.insert(header.begin(), "policy");
  CsvWriter csv(os, header, !g.no_meta, "simulate " + path,
                {"generator=" + std::string(SplitMix64::kName)});
  for (const auto& [label, policy] : policies) {
    sim.policy = policy;
    const auto rep = simulate(sim);
    if (several) {
      std::string quoted = "\"";
      for (char ch : label) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      os << quoted << "\",";
    }
    os << sim_csv_row(rep) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case analysis of linear power-control policies for energy-harvesting links"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--out", g.out, "Write CSV to this file instead of stdout");
  app.add_flag("--no-meta", g.no_meta, "Omit the timestamp comment line");
  app.add_option("--tol", g.tol, "Series tolerance for gamma-lower sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Simulation seed (overrides the config)");
  app.add_option("--horizon", g.horizon, "Simulation horizon (overrides the config)");

  std::string table_name;
  auto* table = app.add_subcommand("table", "Regenerate a reference table as CSV");
  table->add_option("name", table_name, "One of: " + join_names(kTableNames))->required();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Adaptively sampled one-variable sweep");
  sweep->add_option("--var", sw.variable, "Swept variable: c, p, s or b")->required();
  sweep->add_option("--quantity", sw.quantity, "One of: " + join_names(kSweepQuantities))->required();
  sweep->add_option("--grid", sw.grid, "Named grid: A, B, A1 or B1");
  sweep->add_option("--points", sw.points, "Explicit points (sorted before evaluation)")->delimiter(',');
  sweep->add_option("--range", sw.range, "Domain bounds LO HI (HI may be inf)")->expected(2);
  sweep->add_flag("--transform", sw.transform, "Sample c' in [0,1) with c = c'/(1-c')");
  sweep->add_flag("--no-refine", sw.no_refine, "Skip adaptive refinement of --range sweeps");
  sweep->add_option("--c", sw.c, "Fixed capacity");
  sweep->add_option("--p", sw.p, "Fixed MCR");
  sweep->add_option("--s", sw.s, "Fixed slope");
  sweep->add_option("--b", sw.b, "Fixed product b = c p (ties c to p)");

  GreedyArgs gr;
  auto* greedy = app.add_subcommand("greedy", "Greedy-policy threshold and semi-universal bounds");
  greedy->add_option("file", gr.file, "Distribution file (value,probability per line)");
  greedy->add_option("--bounds", gr.bounds, "X_LO X_HI MU: bounds over the interval/mean family")->expected(3);
  greedy->add_option("--clipped", gr.clipped, "X_LO MU_BAR: bounds over clipped distributions")->expected(2);
  greedy->add_option("--mcr", gr.mcr_p, "P: upper bound over clipped distributions with MCR p");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a numerical verification suite");
  verify->add_option("suite", suite, "One of: " + join_names(kVerifySuites) + ", all")->required();

  std::string config;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo simulation from a JSON config");
  simulate_cmd->add_option("config", config, "JSON configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table) return cmd_table(g, table_name);
    if (*sweep) return cmd_sweep(g, sw);
    if (*greedy) return cmd_greedy(g, gr);
    if (*verify) return cmd_verify(g, suite);
    if (*simulate_cmd) return cmd_simulate(g, config);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
