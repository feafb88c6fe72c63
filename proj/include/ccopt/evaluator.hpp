#pragma once

#include "ccopt/partition.hpp"

namespace ccopt {

/// Delivery load for one demand vector, in file units:
/// sum over nonempty user sets S of max_{k in S} x(d_k, S \ {k}).
double load_for_demand(const FullPartition& x, const DemandVector& d, const Instance& inst);

/// Exact average load by full demand enumeration (N^K vectors, product
/// weights). Oracle path; throws CapacityError when N^K exceeds the cap.
double avg_load_bruteforce(const FullPartition& x, const Instance& inst, double enumeration_cap = 1e7);

/// Exact average load of a per-type partition by s-tuple enumeration:
/// sum_{s=1..K} C(K,s) sum_{tuples in N^s} (prod p) max_k y[d_k][s-1].
/// No monotonicity assumption. Throws CapacityError when sum_s N^s exceeds
/// the cap.
double avg_load_symmetric(const SymmetricPartition& y, const Instance& inst, double enumeration_cap = 1e7);

/// Closed-form average load, valid only for monotone rows (checked):
/// sum_{s=1..K} C(K,s) sum_n (P_n^s - P_{n+1}^s) y[n][s-1], where P_n is the
/// popularity tail sum from file n. O(K N). Throws PreconditionError when
/// is_monotone(y) fails.
double avg_load_monotone(const SymmetricPartition& y, const Instance& inst);

/// Average load of a file-symmetric partition under uniform popularity:
/// sum_{s=0..K} C(K,s) (K-s)/(s+1) z_s.
double avg_load_uniform(const UniformPartition& z, int K);

}  // namespace ccopt
