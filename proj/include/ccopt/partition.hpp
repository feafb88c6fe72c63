#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccopt/popularity.hpp"

namespace ccopt {

/// Problem parameters: K users, N files, per-user cache size M (in file
/// units, 0 <= M <= N) and the request pmf.
struct Instance {
  int K = 0;
  int N = 0;
  double M = 0.0;
  Popularity pop;

  void validate() const;
};

/// One file request per user. Entries are 1-based file indices in {1..N}.
struct DemandVector {
  std::vector<int> d;

  int num_users() const { return int(d.size()); }
  void validate(const Instance& inst) const;
};

/// Subset-level partition: x(n, S) is the fraction of file n cached exactly
/// at the user set S. Users are bits: user k (1-based) <-> bit k-1. Storage
/// is dense, N * 2^K doubles, guarded to K <= 20.
struct FullPartition {
  int K = 0;
  int N = 0;
  std::vector<double> values;  // [n * 2^K + mask]

  static FullPartition zeros(int K, int N);

  std::uint32_t num_masks() const { return 1u << K; }
  double& at(int n_idx, std::uint32_t mask) { return values[std::size_t(n_idx) * num_masks() + mask]; }
  double at(int n_idx, std::uint32_t mask) const { return values[std::size_t(n_idx) * num_masks() + mask]; }
};

/// Per-type partition: y[n][s] is the common fraction of every type-s
/// subfile of file n (rows follow the sorted popularity order).
struct SymmetricPartition {
  std::vector<std::vector<double>> y;  // N rows, K+1 columns

  int num_files() const { return int(y.size()); }
  int num_types() const { return y.empty() ? 0 : int(y[0].size()); }  // K+1
};

/// File-symmetric partition: z[s] shared by all files.
struct UniformPartition {
  std::vector<double> z;  // K+1 entries

  int num_types() const { return int(z.size()); }
};

struct Violation {
  std::string constraint;
  double amount = 0.0;  // how far past the boundary
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;

  std::string describe() const;
};

/// Constraint tolerance shared by all feasibility checks; matches the LP
/// solver feasibility tolerance so checks accept solver output.
constexpr double kFeasTol = 1e-9;

/// Range, per-file partition-of-unity, and per-user memory constraints.
FeasibilityReport check_full_feasible(const FullPartition& x, const Instance& inst);

/// Range, sum_s C(K,s) y[n][s] = 1 per file, and the memory constraint
/// sum_n sum_{s>=1} C(K-1,s-1) y[n][s] <= M.
FeasibilityReport check_symmetric_feasible(const SymmetricPartition& y, const Instance& inst);

/// Range, sum_s C(K,s) z_s = 1, and sum_s C(K,s) s z_s <= K M / N.
FeasibilityReport check_uniform_feasible(const UniformPartition& z, const Instance& inst);

/// x(n, S) = y[n][|S|] for every subset; K is the row width minus one.
/// Guarded to K <= 20.
FullPartition expand_symmetric(const SymmetricPartition& y);

/// y[n][s] = z[s] for every file.
SymmetricPartition expand_uniform(const UniformPartition& z, int num_files);

/// Per-type averaging: y[n][s] = sum_{|S|=s} x(n,S) / C(K,s). Preserves
/// feasibility, and never increases the average load. Throws
/// PreconditionError carrying the violation report when x is infeasible.
SymmetricPartition symmetrize(const FullPartition& x, const Instance& inst);

/// y[n][s] >= y[n+1][s] - 1e-9 for all n and s >= 1.
bool is_monotone(const SymmetricPartition& y);

/// Fraction of the cache devoted to each file:
/// q[n] = sum_{s>=1} C(K-1,s-1) y[n][s] / M. Throws PreconditionError at M = 0.
std::vector<double> memory_shares(const SymmetricPartition& y, double M);

}  // namespace ccopt
