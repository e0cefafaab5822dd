#pragma once

// Named evaluation grids for capacities (A, A1) and MCRs (B, B1).

#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

namespace ehlin::grids {

/// {j 10^i : -3 <= i <= 2, 1 <= j <= 9} ∪ {10^3}, ascending.
inline std::vector<double> capacities_a() {
  std::vector<double> out;
  for (int i = -3; i <= 2; ++i) {
    for (int j = 1; j <= 9; ++j) out.push_back(j * std::pow(10.0, i));
  }
  out.push_back(1e3);
  return out;
}

/// {0.001} ∪ {0.01 i : 1 <= i <= 99}, ascending.
inline std::vector<double> mcrs_b() {
  std::vector<double> out{1e-3};
  for (int i = 1; i <= 99; ++i) out.push_back(0.01 * i);
  return out;
}

/// Powers 10^i for -3 <= i <= 6. The set is unbounded above; 10^6 is the
/// largest capacity any table uses.
inline std::vector<double> capacities_a1() {
  std::vector<double> out;
  for (int i = -3; i <= 6; ++i) out.push_back(std::pow(10.0, i));
  return out;
}

inline std::vector<double> mcrs_b1() { return {0.001, 0.01, 0.1, 0.5, 0.9, 0.99}; }

inline std::optional<std::vector<double>> named(std::string_view name) {
  if (name == "A") return capacities_a();
  if (name == "B") return mcrs_b();
  if (name == "A1") return capacities_a1();
  if (name == "B1") return mcrs_b1();
  return std::nullopt;
}

/// n log-spaced points from lo to hi inclusive.
inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    out[k] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1));
  }
  return out;
}

}  // namespace ehlin::grids
