#pragma once

#include <utility>
#include <vector>

namespace ccopt {

/// File request probabilities, sorted nonincreasing, summing to 1.
///
/// Invariants (enforced by the constructors below and by validate()):
///   - every entry >= 0
///   - probs[i] >= probs[i+1]
///   - sum within 1e-12 of 1
struct Popularity {
  std::vector<double> probs;

  int num_files() const { return static_cast<int>(probs.size()); }

  /// Throws InvalidPopularityError when the invariants do not hold.
  void validate() const;
};

/// Zipf pmf over N files: probs[n-1] = n^-gamma / sum_m m^-gamma.
/// gamma = 0 yields the uniform pmf. Throws InvalidInstanceError for N = 0
/// or a non-finite / negative exponent.
Popularity zipf(int num_files, double gamma);

Popularity uniform_popularity(int num_files);

/// Normalizes arbitrary nonnegative weights into a descending-sorted pmf.
///
/// Returns the pmf and the permutation mapping original file indices to
/// sorted positions, both 1-based: perm[i] is the sorted position of
/// original file i+1. The sort is stable, so ties keep their input order.
/// Throws InvalidPopularityError when no weight is positive or any weight
/// is negative or non-finite.
std::pair<Popularity, std::vector<int>> from_weights(const std::vector<double>& weights);

/// Tail sum over the sorted pmf: sum of probs[n-1..N-1] for 1-based n.
/// n = N+1 returns 0 (empty sum). Accumulates from the smallest entries
/// upward to limit cancellation. Throws IndexError outside [1, N+1].
double tail_sum(const Popularity& pop, int n);

/// All N+1 tail sums at once; tails[n-1] = tail_sum(pop, n).
std::vector<double> tail_sums(const Popularity& pop);

}  // namespace ccopt
