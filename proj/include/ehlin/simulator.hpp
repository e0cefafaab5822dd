#pragma once

// Monte Carlo simulation of the harvest-store-use battery recursion
//   B_{t+1} = min(B_t - G_t + E_{t+1}, c).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ehlin/distribution.hpp"
#include "ehlin/linear_perf.hpp"

namespace ehlin {

/// SplitMix64 (Steele, Lea, Flood 2014). Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view kName = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Stationary policy: battery level b -> energy spent g, 0 <= g <= b.
using Policy = std::function<double(double)>;

inline Policy linear_policy(Slope s) {
  const double v = s.value();
  return [v](double b) { return v * b; };
}

inline Policy greedy_policy() { return linear_policy(Slope(1.0)); }

struct SimConfig {
  double c{1.0};
  DiscreteDistribution q;
  Policy policy;
  std::uint64_t horizon{1'000'000};
  std::uint64_t burn_in{10'000};
  std::uint64_t seed{1};
  // Battery level at t = 0; NaN means min(E_0, c).
  double initial_battery{std::numeric_limits<double>::quiet_NaN()};
};

struct SimReport {
  double throughput_estimate{0.0};
  double std_error{0.0};
  std::uint64_t steps_used{0};
  std::uint64_t horizon{0};
  std::uint64_t seed{0};
  std::string generator{std::string(SplitMix64::kName)};
};

inline constexpr int kBatchCount = 32;

namespace detail {

// Inverse-CDF sampler over the atoms of a distribution.
class AtomSampler {
 public:
  explicit AtomSampler(const DiscreteDistribution& q) {
    double acc = 0.0;
    for (const auto& a : q.atoms()) {
      acc += a.prob;
      values_.push_back(a.value);
      cdf_.push_back(acc);
    }
    cdf_.back() = 1.0;
  }

  double operator()(SplitMix64& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return values_[std::min<std::size_t>(it - cdf_.begin(), values_.size() - 1)];
  }

 private:
  std::vector<double> values_;
  std::vector<double> cdf_;
};

}  // namespace detail

/// Runs the recursion for cfg.horizon steps and averages r(G_t) over the
/// steps after burn-in. std_error comes from 32 batch means.
///
/// Rewards are accumulated as deviations from the first recorded reward, so
/// a constant reward stream yields that reward and a zero error exactly.
inline SimReport simulate(const SimConfig& cfg) {
  if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) throw std::invalid_argument("simulate: c must be finite and > 0");
  if (!cfg.policy) throw std::invalid_argument("simulate: policy is empty");
  if (!(cfg.horizon > cfg.burn_in)) throw std::invalid_argument("simulate: horizon must exceed burn_in");
  const std::uint64_t n = cfg.horizon - cfg.burn_in;
  if (n < std::uint64_t(kBatchCount)) {
    throw std::invalid_argument("simulate: need at least 32 steps after burn_in");
  }
  if (cfg.q.size() == 0) throw std::invalid_argument("simulate: distribution is empty");

  SplitMix64 rng(cfg.seed);
  const detail::AtomSampler sample(cfg.q);
  double b = sample(rng);
  b = std::isnan(cfg.initial_battery) ? std::min(b, cfg.c) : cfg.initial_battery;
  if (!(b >= 0.0 && b <= cfg.c)) throw std::invalid_argument("simulate: initial_battery must lie in [0,c]");

  double shift = 0.0;
  std::vector<double> batch_sum(kBatchCount, 0.0);
  std::vector<std::uint64_t> batch_len(kBatchCount, 0);
  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    const double g = cfg.policy(b);
    if (!(g >= 0.0 && g <= b)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "simulate: inadmissible policy output g=" << g << " at step t=" << t << ", battery b=" << b;
      throw std::runtime_error(msg.str());
    }
    if (t >= cfg.burn_in) {
      const std::uint64_t k = t - cfg.burn_in;
      const double r = reward(g);
      if (k == 0) shift = r;
      const auto batch = static_cast<std::size_t>(k * kBatchCount / n);
      batch_sum[batch] += r - shift;
      ++batch_len[batch];
    }
    b = std::min(b - g + sample(rng), cfg.c);
  }

  double total = 0.0;
  std::vector<double> means(kBatchCount);
  for (int k = 0; k < kBatchCount; ++k) {
    total += batch_sum[k];
    means[k] = batch_sum[k] / double(batch_len[k]);
  }
  const double centered_mean = total / double(n);
  double ss = 0.0;
  for (double m : means) ss += (m - centered_mean) * (m - centered_mean);

  SimReport out;
  out.throughput_estimate = shift + centered_mean;
  out.std_error = std::sqrt(ss / (kBatchCount - 1) / kBatchCount);
  out.steps_used = n;
  out.horizon = cfg.horizon;
  out.seed = cfg.seed;
  return out;
}

/// Simulates every policy on the same arrival stream (common random numbers).
inline std::vector<SimReport> compare_policies(double c, const DiscreteDistribution& q,
                                               const std::vector<Policy>& policies,
                                               std::uint64_t horizon, std::uint64_t seed,
                                               std::uint64_t burn_in = 10'000) {
  std::vector<SimReport> out;
  out.reserve(policies.size());
  for (const auto& pol : policies) {
    SimConfig cfg{c, q, pol, horizon, std::min(burn_in, horizon / 2), seed};
    out.push_back(simulate(cfg));
  }
  return out;
}

inline constexpr std::string_view kSimCsvHeader = "seed,horizon,throughput,std_error";

/// One CSV row in the kSimCsvHeader layout, with round-trip precision.
inline std::string sim_csv_row(const SimReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.seed << ',' << r.horizon << ',' << r.throughput_estimate << ',' << r.std_error;
  return os.str();
}

}  // namespace ehlin
