#pragma once

// Discrete energy-arrival distributions and the AWGN reward r(x) = ln(1+x)/2.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehlin {

/// Throughput (nats) obtained by spending energy x in one slot.
inline double reward(double x) {
  if (!(x >= 0.0)) throw std::domain_error("reward: energy must be >= 0, got " + std::to_string(x));
  return 0.5 * std::log1p(x);
}

/// r'(x) = 1 / (2 (1 + x)).
inline double reward_deriv(double x) {
  if (!(x >= 0.0)) throw std::domain_error("reward_deriv: energy must be >= 0, got " + std::to_string(x));
  return 0.5 / (1.0 + x);
}

struct Atom {
  double value{0.0};
  double prob{0.0};

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support probability measure on [0, inf).
///
/// Atoms are kept sorted by value with duplicates (within kMergeTolerance)
/// merged. Zero-probability atoms are dropped. A total-mass drift up to
/// kRenormalizeTolerance is renormalized away; anything larger is rejected.
class DiscreteDistribution {
 public:
  static constexpr double kMergeTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-9;

  DiscreteDistribution() = default;

  explicit DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("distribution: no atoms");
    double total = 0.0;
    for (const auto& a : atoms_) {
      if (!std::isfinite(a.value) || a.value < 0.0) {
        throw std::invalid_argument("distribution: atom value must be finite and >= 0, got " +
                                    std::to_string(a.value));
      }
      if (!(a.prob >= 0.0 && a.prob <= 1.0)) {
        throw std::invalid_argument("distribution: probability must lie in [0,1], got " +
                                    std::to_string(a.prob));
      }
      total += a.prob;
    }
    if (std::fabs(total - 1.0) > kRenormalizeTolerance) {
      throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(total) +
                                  ", not 1");
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& l, const Atom& r) { return l.value < r.value; });
    std::vector<Atom> merged;
    merged.reserve(atoms_.size());
    for (const auto& a : atoms_) {
      if (!merged.empty() && a.value - merged.back().value <= kMergeTolerance) {
        merged.back().prob += a.prob;
      } else {
        merged.push_back(a);
      }
    }
    std::erase_if(merged, [](const Atom& a) { return a.prob == 0.0; });
    for (auto& a : merged) a.prob /= total;
    atoms_ = std::move(merged);
  }

  DiscreteDistribution(std::initializer_list<Atom> atoms)
      : DiscreteDistribution(std::vector<Atom>(atoms)) {}

  static DiscreteDistribution degenerate(double x) { return DiscreteDistribution({{x, 1.0}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double mean() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.prob * a.value;
    return m;
  }

  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }

 private:
  std::vector<Atom> atoms_;
};

/// E[min(X, c)].
inline double clipped_mean(const DiscreteDistribution& q, double c) {
  if (!(c > 0.0)) throw std::domain_error("clipped_mean: capacity must be > 0");
  double m = 0.0;
  for (const auto& a : q.atoms()) m += a.prob * std::min(a.value, c);
  return m;
}

/// Mean-to-capacity ratio, clipped to [0, 1] against rounding.
inline double mcr(const DiscreteDistribution& q, double c) {
  if (!(c > 0.0)) throw std::domain_error("mcr: capacity must be > 0");
  return std::clamp(clipped_mean(q, c) / c, 0.0, 1.0);
}

/// (1-p) δ_0 + p δ_c: the worst-case arrival law for linear policies at MCR p.
inline DiscreteDistribution bernoulli_extremal(double c, double p) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("bernoulli_extremal: need c > 0");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bernoulli_extremal: need 0 < p < 1");
  return DiscreteDistribution({{0.0, 1.0 - p}, {c, p}});
}

}  // namespace ehlin
