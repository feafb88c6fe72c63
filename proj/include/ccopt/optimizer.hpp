#pragma once

#include <variant>

#include "ccopt/lp.hpp"
#include "ccopt/partition.hpp"

namespace ccopt {

struct SolveDiagnostics {
  long iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  /// |LP objective - independent evaluator value| for the returned partition.
  double evaluator_check = 0.0;
};

/// An optimal (or constructed) placement with its average load.
struct OptResult {
  std::variant<FullPartition, SymmetricPartition, UniformPartition> partition;
  double value = 0.0;
  SolveDiagnostics diagnostics;

  const SymmetricPartition& symmetric() const { return std::get<SymmetricPartition>(partition); }
  const UniformPartition& uniform() const { return std::get<UniformPartition>(partition); }
  const FullPartition& full() const { return std::get<FullPartition>(partition); }
};

/// Minimize the average load over per-type partitions y under an arbitrary
/// popularity: linear objective sum_s C(K,s) (P_n^s - P_{n+1}^s) y[n][s-1]
/// with the partition, memory, and row-monotonicity constraints. (K+1)N
/// variables. The result is monotone and achieves the subset-level optimum.
OptResult optimize_placement(const Instance& inst);

/// Same minimum evaluated through epigraph variables instead of the
/// closed-form objective, by default without the monotonicity rows (so it
/// optimizes over all per-type partitions, not just monotone ones).
/// Exponential in N (one epigraph variable per request tuple); small
/// instances only. Cross-checks optimize_placement and measures what the
/// monotonicity rows cost.
OptResult optimize_placement_epigraph(const Instance& inst, double tuple_cap = 5000,
                                      bool impose_monotone = false);

/// Minimize sum_s C(K,s) (K-s)/(s+1) z_s under the uniform-popularity
/// constraints; K+1 variables.
OptResult optimize_uniform_lp(int K, int N, double M);

/// Closed-form optimum under uniform popularity for integer K M / N:
/// z has a single nonzero entry 1/C(K, KM/N) at s = KM/N and the value is
/// K (1 - M/N) / (1 + KM/N). Throws PreconditionError for non-integer KM/N.
OptResult uniform_closed_form(int K, int N, double M);

/// Globally optimal subset-level partition by an exact epigraph LP over
/// (x, t): one epigraph variable per (user set, request tuple) pair, weight
/// = product of request probabilities. Requires (N+1)^K <= tuple_cap.
OptResult optimize_full_oracle(const Instance& inst, double tuple_cap = 5000);

/// Popularity-agnostic baseline: the worst-case-optimal single-type
/// placement, with intermediate cache sizes realized by memory sharing
/// between the two adjacent integer points. The value is the exact average
/// load of that placement under inst.pop.
OptResult baseline_mn_centralized(const Instance& inst);

/// Explicit dual certificate for the uniform-popularity optimum.
/// h(s) = theta s^2 + (theta - nu - 1) s + K - nu must be nonnegative on
/// {0..K} with a root at s = KM/N.
struct KktCertificate {
  double theta = 0.0;
  double nu = 0.0;
  std::vector<double> eta;        // multipliers for z_s >= 0
  double max_residual = 0.0;      // worst violation across conditions (i)-(iv)
  double h_min = 0.0;             // min over s in {0..K} of h(s)
  double h_at_t = 0.0;            // h(KM/N)
  bool valid = false;

  double h(double s, int K) const { return theta * s * s + (theta - nu - 1.0) * s + double(K) - nu; }
};

/// Checks the certificate for the claimed optimum z under uniform
/// popularity. KM/N must be an integer; interior points use the explicit
/// multipliers, the boundaries M = 0 and M = N use the midpoint of the
/// admissible multiplier interval. Throws PreconditionError for non-integer
/// KM/N.
KktCertificate verify_kkt_uniform(const UniformPartition& z, int K, int N, double M);

}  // namespace ccopt
