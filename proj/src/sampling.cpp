#include "ccopt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"

namespace ccopt {

namespace {

// Point on the K+1 simplex via normalized exponentials.
std::vector<double> simplex_point(std::mt19937_64& rng, int dim) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> w(dim);
  double total = 0.0;
  for (int i = 0; i < dim; ++i) total += w[i] = exp1(rng);
  for (int i = 0; i < dim; ++i) w[i] /= total;
  return w;
}

}  // namespace

SymmetricPartition sample_monotone_symmetric(std::mt19937_64& rng, int K, int N, double* used_memory) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> num_profiles(1, 3);
  const int J = num_profiles(rng);

  // Type-mass profiles and nonincreasing per-file mixing weights; leftover
  // mass per file goes to type 0, which keeps every row on the simplex.
  std::vector<std::vector<double>> profile(J);
  for (int j = 0; j < J; ++j) profile[j] = simplex_point(rng, K + 1);
  std::vector<std::vector<double>> lambda(J, std::vector<double>(N));
  std::vector<double> rowsum(N, 0.0);
  for (int j = 0; j < J; ++j) {
    for (int n = 0; n < N; ++n) lambda[j][n] = u01(rng);
    std::sort(lambda[j].begin(), lambda[j].end(), std::greater<double>());
    for (int n = 0; n < N; ++n) rowsum[n] += lambda[j][n];
  }
  const double worst = *std::max_element(rowsum.begin(), rowsum.end());
  if (worst > 1.0)
    for (int j = 0; j < J; ++j)
      for (int n = 0; n < N; ++n) lambda[j][n] /= worst;

  SymmetricPartition y;
  y.y.assign(N, std::vector<double>(K + 1, 0.0));
  const auto ck = binom_row(K);
  double memory = 0.0;
  for (int n = 0; n < N; ++n) {
    double mass_cached = 0.0;
    for (int s = 1; s <= K; ++s) {
      double mass = 0.0;
      for (int j = 0; j < J; ++j) mass += lambda[j][n] * profile[j][s];
      y.y[n][s] = mass / ck[s];
      mass_cached += mass;
      memory += binom(K - 1, s - 1) * y.y[n][s];
    }
    y.y[n][0] = 1.0 - mass_cached;
  }
  if (used_memory != nullptr) *used_memory = memory;
  return y;
}

FullPartition sample_full_partition(std::mt19937_64& rng, int K, int N, double M) {
  FullPartition x = FullPartition::zeros(K, N);
  const std::uint32_t masks = x.num_masks();
  for (int n = 0; n < N; ++n) {
    const auto point = simplex_point(rng, int(masks));
    for (std::uint32_t m = 0; m < masks; ++m) x.at(n, m) = point[m];
  }
  double worst_usage = 0.0;
  for (int k = 0; k < K; ++k) {
    double used = 0.0;
    for (int n = 0; n < N; ++n)
      for (std::uint32_t m = 0; m < masks; ++m)
        if (m >> k & 1u) used += x.at(n, m);
    worst_usage = std::max(worst_usage, used);
  }
  if (worst_usage > M) {
    // Shrink cached mass uniformly; the freed mass moves to the uncached
    // subfile, which scales every user's occupancy by the same factor.
    const double scale = worst_usage > 0.0 ? M / worst_usage * (1.0 - 1e-12) : 0.0;
    for (int n = 0; n < N; ++n) {
      double cached = 0.0;
      for (std::uint32_t m = 1; m < masks; ++m) cached += x.at(n, m) *= scale;
      x.at(n, 0) = 1.0 - cached;
    }
  }
  return x;
}

SampledRealization sample_integer_realization(std::uint64_t seed, int K, int N, double gamma) {
  std::mt19937_64 rng(seed);
  const int Q = 24;  // mass grid per file
  long lcm = 1;
  for (int s = 0; s <= K; ++s) {
    const long c = std::lround(binom(K, s));
    lcm = std::lcm(lcm, c);
  }
  const int F = int(Q * lcm);

  // Integer type mass per file: row n+1 dominated by row n coordinatewise
  // for s >= 1, so subfile sizes are monotone across files by construction.
  std::vector<std::vector<long>> mass(N, std::vector<long>(K + 1, 0));
  for (int n = 0; n < N; ++n) {
    long rem = n == 0 ? Q : 0;
    for (int s = 1; s <= K; ++s) {
      long hi = n == 0 ? rem : mass[n - 1][s];
      std::uniform_int_distribution<long> pick(0, hi);
      mass[n][s] = pick(rng);
      if (n == 0) rem -= mass[n][s];
    }
    long cached = 0;
    for (int s = 1; s <= K; ++s) cached += mass[n][s];
    mass[n][0] = Q - cached;
  }

  SampledRealization out;
  out.inst.K = K;
  out.inst.N = N;
  out.inst.pop = zipf(N, gamma);

  out.real.F = F;
  out.real.seed = seed;
  const std::uint32_t nmasks = 1u << K;
  out.real.sizes.assign(N, std::vector<int>(nmasks, 0));
  out.y.y.assign(N, std::vector<double>(K + 1, 0.0));
  long cache_units = 0;
  for (int n = 0; n < N; ++n) {
    for (int s = 0; s <= K; ++s) {
      const long cks = std::lround(binom(K, s));
      const long unit_size = mass[n][s] * lcm / cks;  // exact: cks divides lcm
      out.y.y[n][s] = double(unit_size) / double(F);
      if (s >= 1) cache_units += std::lround(binom(K - 1, s - 1)) * unit_size;
    }
    for (std::uint32_t m = 0; m < nmasks; ++m) {
      const int s = popcount(m);
      out.real.sizes[n][m] = int(mass[n][s] * lcm / std::lround(binom(K, s)));
    }
  }
  out.inst.M = double(cache_units) / double(F);
  out.real.inst = out.inst;

  int off;
  out.real.offsets.assign(N, std::vector<int>(nmasks, 0));
  for (int n = 0; n < N; ++n) {
    off = 0;
    for (std::uint32_t m = 0; m < nmasks; ++m) {
      out.real.offsets[n][m] = off;
      off += out.real.sizes[n][m];
    }
  }
  out.real.validate();
  out.x = expand_symmetric(out.y);
  return out;
}

}  // namespace ccopt
