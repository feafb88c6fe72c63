#pragma once

#include <vector>

#include "ccopt/partition.hpp"

namespace ccopt {

/// Converse bound on the average load under uniform popularity:
/// the larger of two families over l in {1..K},
///   (1 - (1-1/N)^l) (N - l M)   and   (1 - (1-1/N)^l) N - l(l+1)/(2N) M,
/// floored at 0. Accepts M beyond N (the genie sum evaluates reduced
/// libraries at the full cache size); the floor keeps the bound valid there.
double lb_uniform(int K, int N, double M);

/// Per-l contributions to lb_uniform (index l-1), each floored at 0.
std::vector<double> lb_uniform_terms(int K, int N, double M);

struct GenieBound {
  double value = 0.0;
  int argmax_nprime = 0;                 // restricted library size attaining the max
  std::vector<double> per_nprime;        // bound value for each N' in {1..N}
};

/// Genie-aided converse bound under arbitrary popularity: restrict to the
/// N' most popular files, mix the uniform bound over the binomial number of
/// users requesting them,
///   max_{N'} sum_{K'=1..K} C(K,K') (N' p_{N'})^{K'} (1 - N' p_{N'})^{K-K'}
///            lb_uniform(K', N', M),
/// with 0^0 = 1. Under uniform popularity this equals lb_uniform(K, N, M).
GenieBound lb_genie(const Instance& inst);

}  // namespace ccopt
