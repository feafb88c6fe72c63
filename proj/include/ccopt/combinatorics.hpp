#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ccopt/errors.hpp"

namespace ccopt {

/// C(n, k) as a double via the multiplicative recurrence.
/// Relative accuracy is ~1e-14 for n <= 64; larger n is rejected.
inline double binom(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (n > 64) throw CapacityError("binom: n > 64 exceeds the supported range");
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Row (C(n,0), ..., C(n,n)).
inline std::vector<double> binom_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s <= n; ++s) row[static_cast<std::size_t>(s)] = binom(n, s);
  return row;
}

inline int popcount(std::uint32_t mask) { return std::popcount(mask); }

/// Masks over `bits` bits grouped by popcount, ascending within each group.
inline std::vector<std::vector<std::uint32_t>> masks_by_size(int bits) {
  std::vector<std::vector<std::uint32_t>> groups(static_cast<std::size_t>(bits) + 1);
  const std::uint32_t total = 1u << bits;
  for (std::uint32_t m = 0; m < total; ++m) groups[static_cast<std::size_t>(popcount(m))].push_back(m);
  return groups;
}

/// Neumaier-compensated accumulator; the brute-force evaluators add terms as
/// small as p_N^K and must not lose them.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace ccopt
