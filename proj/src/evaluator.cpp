#include "ccopt/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"

namespace ccopt {

double load_for_demand(const FullPartition& x, const DemandVector& d, const Instance& inst) {
  if (x.K != inst.K || x.N != inst.N) throw ShapeError("load_for_demand: partition does not match instance");
  d.validate(inst);
  const std::uint32_t masks = x.num_masks();
  KahanSum total;
  for (std::uint32_t S = 1; S < masks; ++S) {
    double longest = 0.0;
    for (int k = 0; k < inst.K; ++k)
      if (S >> k & 1u) longest = std::max(longest, x.at(d.d[k] - 1, S ^ (1u << k)));
    total.add(longest);
  }
  return total.value();
}

double avg_load_bruteforce(const FullPartition& x, const Instance& inst, double enumeration_cap) {
  if (x.K != inst.K || x.N != inst.N) throw ShapeError("avg_load_bruteforce: partition does not match instance");
  const double count = std::pow(double(inst.N), inst.K);
  if (count > enumeration_cap)
    throw CapacityError("avg_load_bruteforce: N^K = " + std::to_string(count) +
                        " exceeds the enumeration cap " + std::to_string(enumeration_cap));
  DemandVector d;
  d.d.assign(inst.K, 1);
  KahanSum total;
  for (;;) {
    double weight = 1.0;
    for (int k = 0; k < inst.K; ++k) weight *= inst.pop.probs[d.d[k] - 1];
    if (weight > 0.0) total.add(weight * load_for_demand(x, d, inst));
    // odometer over {1..N}^K
    int k = 0;
    while (k < inst.K && d.d[k] == inst.N) d.d[k++] = 1;
    if (k == inst.K) break;
    ++d.d[k];
  }
  return total.value();
}

double avg_load_symmetric(const SymmetricPartition& y, const Instance& inst, double enumeration_cap) {
  if (y.num_files() != inst.N || y.num_types() != inst.K + 1)
    throw ShapeError("avg_load_symmetric: partition does not match instance");
  double tuples = 0.0;
  for (int s = 1; s <= inst.K; ++s) tuples += std::pow(double(inst.N), s);
  if (tuples > enumeration_cap)
    throw CapacityError("avg_load_symmetric: sum_s N^s = " + std::to_string(tuples) +
                        " exceeds the enumeration cap " + std::to_string(enumeration_cap));
  KahanSum total;
  std::vector<int> d;
  for (int s = 1; s <= inst.K; ++s) {
    const double cks = binom(inst.K, s);
    d.assign(s, 1);
    for (;;) {
      double weight = 1.0;
      double longest = 0.0;
      for (int k = 0; k < s; ++k) {
        weight *= inst.pop.probs[d[k] - 1];
        longest = std::max(longest, y.y[d[k] - 1][s - 1]);
      }
      if (weight > 0.0) total.add(cks * weight * longest);
      int k = 0;
      while (k < s && d[k] == inst.N) d[k++] = 1;
      if (k == s) break;
      ++d[k];
    }
  }
  return total.value();
}

double avg_load_monotone(const SymmetricPartition& y, const Instance& inst) {
  if (y.num_files() != inst.N || y.num_types() != inst.K + 1)
    throw ShapeError("avg_load_monotone: partition does not match instance");
  if (!is_monotone(y))
    throw PreconditionError("avg_load_monotone: rows are not monotone; the closed form does not apply");
  const auto tails = tail_sums(inst.pop);
  KahanSum total;
  for (int s = 1; s <= inst.K; ++s) {
    const double cks = binom(inst.K, s);
    for (int n = 0; n < inst.N; ++n) {
      const double span = std::pow(tails[n], s) - std::pow(tails[n + 1], s);
      total.add(cks * span * y.y[n][s - 1]);
    }
  }
  return total.value();
}

double avg_load_uniform(const UniformPartition& z, int K) {
  if (z.num_types() != K + 1) throw ShapeError("avg_load_uniform: expected K+1 entries");
  KahanSum total;
  for (int s = 0; s <= K; ++s) total.add(binom(K, s) * double(K - s) / double(s + 1) * z.z[s]);
  return total.value();
}

}  // namespace ccopt
