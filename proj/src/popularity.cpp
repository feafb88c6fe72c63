#include "ccopt/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ccopt/errors.hpp"

namespace ccopt {

namespace {
constexpr double kNormTol = 1e-12;
}

void Popularity::validate() const {
  if (probs.empty()) throw InvalidPopularityError("popularity: empty pmf");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0)
      throw InvalidPopularityError("popularity: entry " + std::to_string(i + 1) + " is negative or non-finite");
    if (i + 1 < probs.size() && probs[i] < probs[i + 1])
      throw InvalidPopularityError("popularity: entries must be nonincreasing");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw InvalidPopularityError("popularity: entries sum to " + std::to_string(sum) + ", not 1");
}

Popularity zipf(int num_files, double gamma) {
  if (num_files < 1) throw InvalidInstanceError("zipf: N must be >= 1");
  if (!std::isfinite(gamma) || gamma < 0.0) throw InvalidInstanceError("zipf: gamma must be finite and >= 0");
  std::vector<double> w(num_files);
  for (int n = 1; n <= num_files; ++n) w[n - 1] = std::pow(double(n), -gamma);
  // Weights decrease in n; sum small-to-large and normalize exactly once.
  double total = 0.0;
  for (int n = num_files - 1; n >= 0; --n) total += w[n];
  Popularity pop;
  pop.probs.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) pop.probs[i] = w[i] / total;
  pop.validate();
  return pop;
}

Popularity uniform_popularity(int num_files) { return zipf(num_files, 0.0); }

std::pair<Popularity, std::vector<int>> from_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw InvalidPopularityError("from_weights: empty weight vector");
  bool any_positive = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidPopularityError("from_weights: weights must be finite and nonnegative");
    if (w > 0.0) any_positive = true;
  }
  if (!any_positive) throw InvalidPopularityError("from_weights: all weights are zero");

  const int n = int(weights.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weights[a] > weights[b]; });

  std::vector<double> sorted(n);
  for (int pos = 0; pos < n; ++pos) sorted[pos] = weights[order[pos]];
  double total = 0.0;
  for (int pos = n - 1; pos >= 0; --pos) total += sorted[pos];

  Popularity pop;
  pop.probs.resize(n);
  for (int pos = 0; pos < n; ++pos) pop.probs[pos] = sorted[pos] / total;

  // perm[i] = 1-based sorted position of original file i+1.
  std::vector<int> perm(n);
  for (int pos = 0; pos < n; ++pos) perm[order[pos]] = pos + 1;

  pop.validate();
  return {std::move(pop), std::move(perm)};
}

double tail_sum(const Popularity& pop, int n) {
  const int N = pop.num_files();
  if (n < 1 || n > N + 1) throw IndexError("tail_sum: index " + std::to_string(n) + " outside [1, N+1]");
  double sum = 0.0;
  for (int m = N; m >= n; --m) sum += pop.probs[m - 1];
  return sum;
}

std::vector<double> tail_sums(const Popularity& pop) {
  const int N = pop.num_files();
  std::vector<double> tails(N + 1, 0.0);
  for (int n = N; n >= 1; --n) tails[n - 1] = tails[n] + pop.probs[n - 1];
  return tails;
}

}  // namespace ccopt
