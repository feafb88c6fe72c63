#include "ccopt/partition.hpp"

#include <cmath>
#include <sstream>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"

namespace ccopt {

namespace {
constexpr int kMaxFullK = 20;

void require_full_shape(const FullPartition& x, const Instance& inst) {
  if (x.K != inst.K || x.N != inst.N || x.values.size() != std::size_t(inst.N) << inst.K)
    throw ShapeError("full partition does not match instance dimensions");
}

void require_symmetric_shape(const SymmetricPartition& y, const Instance& inst) {
  if (y.num_files() != inst.N) throw ShapeError("symmetric partition: wrong number of rows");
  for (const auto& row : y.y)
    if (int(row.size()) != inst.K + 1) throw ShapeError("symmetric partition: rows must have K+1 entries");
}

void require_uniform_shape(const UniformPartition& z, const Instance& inst) {
  if (z.num_types() != inst.K + 1) throw ShapeError("uniform partition: expected K+1 entries");
}
}  // namespace

void Instance::validate() const {
  if (K < 1) throw InvalidInstanceError("instance: K must be >= 1");
  if (N < 1) throw InvalidInstanceError("instance: N must be >= 1");
  if (!std::isfinite(M) || M < 0.0 || M > double(N))
    throw InvalidInstanceError("instance: M must lie in [0, N]");
  if (pop.num_files() != N) throw InvalidInstanceError("instance: popularity must have exactly N entries");
  pop.validate();
}

void DemandVector::validate(const Instance& inst) const {
  if (num_users() != inst.K) throw ShapeError("demand vector: expected K entries");
  for (int v : d)
    if (v < 1 || v > inst.N) throw IndexError("demand vector: file index outside {1..N}");
}

FullPartition FullPartition::zeros(int K, int N) {
  if (K > kMaxFullK) throw CapacityError("full partition storage guarded to K <= 20");
  FullPartition x;
  x.K = K;
  x.N = N;
  x.values.assign(std::size_t(N) << K, 0.0);
  return x;
}

std::string FeasibilityReport::describe() const {
  if (feasible) return "feasible";
  std::ostringstream os;
  os << violations.size() << " violated constraint(s):";
  for (const auto& v : violations) os << "\n  " << v.constraint << " (by " << v.amount << ")";
  return os.str();
}

FeasibilityReport check_full_feasible(const FullPartition& x, const Instance& inst) {
  require_full_shape(x, inst);
  FeasibilityReport rep;
  auto flag = [&rep](const std::string& what, double amount) {
    rep.feasible = false;
    rep.violations.push_back({what, amount});
  };
  const std::uint32_t masks = x.num_masks();
  for (int n = 0; n < inst.N; ++n) {
    double sum = 0.0;
    for (std::uint32_t m = 0; m < masks; ++m) {
      const double v = x.at(n, m);
      if (v < -kFeasTol) flag("x(" + std::to_string(n + 1) + ", mask " + std::to_string(m) + ") < 0", -v);
      if (v > 1.0 + kFeasTol) flag("x(" + std::to_string(n + 1) + ", mask " + std::to_string(m) + ") > 1", v - 1.0);
      sum += v;
    }
    if (std::abs(sum - 1.0) > kFeasTol)
      flag("partition of file " + std::to_string(n + 1) + " does not sum to 1", std::abs(sum - 1.0));
  }
  for (int k = 0; k < inst.K; ++k) {
    double used = 0.0;
    for (int n = 0; n < inst.N; ++n)
      for (std::uint32_t m = 0; m < masks; ++m)
        if (m >> k & 1u) used += x.at(n, m);
    if (used > inst.M + kFeasTol)
      flag("cache of user " + std::to_string(k + 1) + " exceeds M", used - inst.M);
  }
  return rep;
}

FeasibilityReport check_symmetric_feasible(const SymmetricPartition& y, const Instance& inst) {
  require_symmetric_shape(y, inst);
  FeasibilityReport rep;
  auto flag = [&rep](const std::string& what, double amount) {
    rep.feasible = false;
    rep.violations.push_back({what, amount});
  };
  const auto ck = binom_row(inst.K);
  double mem = 0.0;
  for (int n = 0; n < inst.N; ++n) {
    double sum = 0.0;
    for (int s = 0; s <= inst.K; ++s) {
      const double v = y.y[n][s];
      if (v < -kFeasTol) flag("y[" + std::to_string(n + 1) + "][" + std::to_string(s) + "] < 0", -v);
      if (v > 1.0 + kFeasTol) flag("y[" + std::to_string(n + 1) + "][" + std::to_string(s) + "] > 1", v - 1.0);
      sum += ck[s] * v;
      if (s >= 1) mem += binom(inst.K - 1, s - 1) * v;
    }
    if (std::abs(sum - 1.0) > kFeasTol)
      flag("type sums of file " + std::to_string(n + 1) + " do not total 1", std::abs(sum - 1.0));
  }
  if (mem > inst.M + kFeasTol) flag("memory constraint exceeds M", mem - inst.M);
  return rep;
}

FeasibilityReport check_uniform_feasible(const UniformPartition& z, const Instance& inst) {
  require_uniform_shape(z, inst);
  FeasibilityReport rep;
  auto flag = [&rep](const std::string& what, double amount) {
    rep.feasible = false;
    rep.violations.push_back({what, amount});
  };
  const auto ck = binom_row(inst.K);
  double sum = 0.0, mem = 0.0;
  for (int s = 0; s <= inst.K; ++s) {
    const double v = z.z[s];
    if (v < -kFeasTol) flag("z[" + std::to_string(s) + "] < 0", -v);
    if (v > 1.0 + kFeasTol) flag("z[" + std::to_string(s) + "] > 1", v - 1.0);
    sum += ck[s] * v;
    mem += ck[s] * s * v;
  }
  if (std::abs(sum - 1.0) > kFeasTol) flag("type sums do not total 1", std::abs(sum - 1.0));
  const double budget = double(inst.K) * inst.M / double(inst.N);
  if (mem > budget + kFeasTol) flag("memory constraint exceeds KM/N", mem - budget);
  return rep;
}

FullPartition expand_symmetric(const SymmetricPartition& y) {
  if (y.num_types() < 1) throw ShapeError("expand_symmetric: empty partition");
  const int K = y.num_types() - 1;
  if (K > kMaxFullK) throw CapacityError("expand_symmetric guarded to K <= 20");
  const int N = y.num_files();
  FullPartition x = FullPartition::zeros(K, N);
  const std::uint32_t masks = x.num_masks();
  for (int n = 0; n < N; ++n)
    for (std::uint32_t m = 0; m < masks; ++m) x.at(n, m) = y.y[n][popcount(m)];
  return x;
}

SymmetricPartition expand_uniform(const UniformPartition& z, int num_files) {
  SymmetricPartition y;
  y.y.assign(num_files, z.z);
  return y;
}

SymmetricPartition symmetrize(const FullPartition& x, const Instance& inst) {
  const auto rep = check_full_feasible(x, inst);
  if (!rep.feasible) throw PreconditionError("symmetrize requires a feasible partition; " + rep.describe());
  SymmetricPartition y;
  y.y.assign(inst.N, std::vector<double>(inst.K + 1, 0.0));
  const std::uint32_t masks = x.num_masks();
  const auto ck = binom_row(inst.K);
  for (int n = 0; n < inst.N; ++n) {
    for (std::uint32_t m = 0; m < masks; ++m) y.y[n][popcount(m)] += x.at(n, m);
    for (int s = 0; s <= inst.K; ++s) y.y[n][s] /= ck[s];
  }
  return y;
}

bool is_monotone(const SymmetricPartition& y) {
  const int N = y.num_files();
  const int types = y.num_types();
  for (int n = 0; n + 1 < N; ++n)
    for (int s = 1; s < types; ++s)
      if (y.y[n][s] < y.y[n + 1][s] - kFeasTol) return false;
  return true;
}

std::vector<double> memory_shares(const SymmetricPartition& y, double M) {
  if (M <= 0.0) throw PreconditionError("memory_shares undefined for M = 0");
  const int N = y.num_files();
  const int K = y.num_types() - 1;
  std::vector<double> q(N, 0.0);
  for (int n = 0; n < N; ++n) {
    for (int s = 1; s <= K; ++s) q[n] += binom(K - 1, s - 1) * y.y[n][s];
    q[n] /= M;
  }
  return q;
}

}  // namespace ccopt
