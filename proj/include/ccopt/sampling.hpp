#pragma once

#include <cstdint>
#include <random>

#include "ccopt/partition.hpp"
#include "ccopt/simulator.hpp"

namespace ccopt {

/// Random feasible per-type partition with rows nonincreasing across files
/// (a mixture of per-type profiles with nonincreasing mixing weights).
/// On return *used_memory is the exact memory the partition occupies; any
/// instance with M >= that value accepts it.
SymmetricPartition sample_monotone_symmetric(std::mt19937_64& rng, int K, int N, double* used_memory);

/// Random feasible subset-level partition for the given cache size
/// (per-file Dirichlet mass, scaled toward the uncached subfile until every
/// user fits in M).
FullPartition sample_full_partition(std::mt19937_64& rng, int K, int N, double M);

/// A random monotone symmetric placement realized exactly in integer units:
/// F is a multiple of every C(K,s), so sizes[n][mask] = F * y[n][s] holds
/// with no rounding. The instance's M equals the exact per-user occupancy.
struct SampledRealization {
  Instance inst;
  PlacementRealization real;
  SymmetricPartition y;
  FullPartition x;
};

SampledRealization sample_integer_realization(std::uint64_t seed, int K, int N, double gamma);

}  // namespace ccopt
