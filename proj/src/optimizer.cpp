#include "ccopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"
#include "ccopt/evaluator.hpp"

namespace ccopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpSolution solve_or_throw(const LinearProgram& lp) {
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::Optimal)
    throw InternalError(std::string("optimizer: LP ended with status ") + to_string(sol.status) +
                        "; the placement polytope is never empty for a valid instance");
  return sol;
}

SolveDiagnostics diagnostics_of(const LpSolution& sol) {
  SolveDiagnostics d;
  d.iterations = sol.iterations;
  d.primal_residual = sol.primal_residual;
  d.dual_residual = sol.dual_residual;
  d.duality_gap = sol.duality_gap;
  return d;
}

// The LPs optimize type masses w[n][s] = C(K,s) y[n][s] rather than the
// per-subfile fractions: every partition row becomes all-ones, the memory
// row has coefficients s/K, and the monotonicity rows keep +-1, so all
// constraint coefficients stay within [0,1] regardless of K. (In y space
// the binomial coefficients reach C(20,10) and wreck the tableau's
// conditioning at paper-scale instances.)

// Objective coefficient of the mass w[n][s]: (K-s)/(s+1) times the tail-sum
// difference P_n^{s+1} - P_{n+1}^{s+1}; the fully-cached type never costs.
std::vector<std::vector<double>> mass_objective(const Instance& inst) {
  const auto tails = tail_sums(inst.pop);
  std::vector<std::vector<double>> c(inst.N, std::vector<double>(inst.K + 1, 0.0));
  for (int n = 0; n < inst.N; ++n)
    for (int s = 0; s < inst.K; ++s)
      c[n][s] = double(inst.K - s) / double(s + 1) * (std::pow(tails[n], s + 1) - std::pow(tails[n + 1], s + 1));
  return c;
}

// Per-file partition of unity plus the single memory row, in mass space.
void add_mass_constraints(LinearProgram& lp, const Instance& inst, int stride) {
  for (int n = 0; n < inst.N; ++n) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int s = 0; s <= inst.K; ++s) row[n * stride + s] = 1.0;
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }
  std::vector<double> mem(lp.num_vars(), 0.0);
  for (int n = 0; n < inst.N; ++n)
    for (int s = 1; s <= inst.K; ++s) mem[n * stride + s] = double(s) / double(inst.K);
  lp.ub_rows.push_back(std::move(mem));
  lp.ub_rhs.push_back(inst.M);
}

void add_monotone_rows(LinearProgram& lp, const Instance& inst, int stride) {
  for (int n = 0; n + 1 < inst.N; ++n)
    for (int s = 1; s <= inst.K; ++s) {
      std::vector<double> row(lp.num_vars(), 0.0);
      row[(n + 1) * stride + s] = 1.0;
      row[n * stride + s] = -1.0;
      lp.ub_rows.push_back(std::move(row));
      lp.ub_rhs.push_back(0.0);
    }
}

SymmetricPartition partition_from_mass(const std::vector<double>& w, const Instance& inst) {
  const auto ck = binom_row(inst.K);
  SymmetricPartition y;
  y.y.assign(inst.N, std::vector<double>(inst.K + 1, 0.0));
  for (int n = 0; n < inst.N; ++n)
    for (int s = 0; s <= inst.K; ++s)
      y.y[n][s] = std::clamp(w[n * (inst.K + 1) + s] / ck[s], 0.0, 1.0);
  return y;
}

}  // namespace

OptResult optimize_placement(const Instance& inst) {
  inst.validate();
  const int K = inst.K, N = inst.N;
  const int stride = K + 1;

  LinearProgram lp;
  lp.objective.assign(std::size_t(N) * stride, 0.0);
  const auto c = mass_objective(inst);
  for (int n = 0; n < N; ++n)
    for (int s = 0; s <= K; ++s) lp.objective[n * stride + s] = c[n][s];
  lp.lower.assign(lp.objective.size(), 0.0);
  lp.upper.assign(lp.objective.size(), 1.0);
  add_mass_constraints(lp, inst, stride);
  // Row monotonicity, imposed in sorted-popularity order.
  add_monotone_rows(lp, inst, stride);

  const LpSolution sol = solve_or_throw(lp);
  OptResult res;
  res.value = sol.objective;
  SymmetricPartition y = partition_from_mass(sol.x, inst);
  res.diagnostics = diagnostics_of(sol);
  res.diagnostics.evaluator_check = std::abs(avg_load_monotone(y, inst) - sol.objective);
  res.partition = std::move(y);
  return res;
}

OptResult optimize_placement_epigraph(const Instance& inst, double tuple_cap, bool impose_monotone) {
  inst.validate();
  const int K = inst.K, N = inst.N;
  const int stride = K + 1;

  double tuples = 0.0;
  for (int s = 1; s <= K; ++s) tuples += std::pow(double(N), s);
  if (tuples > tuple_cap)
    throw CapacityError("optimize_placement_epigraph: sum_s N^s = " + std::to_string(tuples) +
                        " exceeds the cap " + std::to_string(tuple_cap));

  LinearProgram lp;
  const int ny = N * stride;
  lp.objective.assign(ny, 0.0);
  lp.lower.assign(ny, 0.0);
  lp.upper.assign(ny, 1.0);
  add_mass_constraints(lp, inst, stride);
  if (impose_monotone) add_monotone_rows(lp, inst, stride);

  // One epigraph variable t >= max_k w[d_k][s-1] / C(K,s-1) per (s, request
  // tuple); objective weight C(K,s) prod p.
  const auto ck = binom_row(K);
  std::vector<int> d;
  for (int s = 1; s <= K; ++s) {
    const double cks = ck[s];
    d.assign(s, 1);
    for (;;) {
      double weight = cks;
      for (int k = 0; k < s; ++k) weight *= inst.pop.probs[d[k] - 1];
      const int t = lp.num_vars();
      lp.objective.push_back(weight);
      lp.lower.push_back(0.0);
      lp.upper.push_back(kInf);
      for (int k = 0; k < s; ++k) {
        std::vector<double> row(t + 1, 0.0);
        row[(d[k] - 1) * stride + (s - 1)] = 1.0 / ck[s - 1];
        row[t] = -1.0;
        lp.ub_rows.push_back(std::move(row));
        lp.ub_rhs.push_back(0.0);
      }
      int k = 0;
      while (k < s && d[k] == N) d[k++] = 1;
      if (k == s) break;
      ++d[k];
    }
  }
  for (auto& row : lp.eq_rows) row.resize(lp.num_vars(), 0.0);
  for (auto& row : lp.ub_rows) row.resize(lp.num_vars(), 0.0);

  const LpSolution sol = solve_or_throw(lp);
  OptResult res;
  res.value = sol.objective;
  SymmetricPartition y = partition_from_mass(sol.x, inst);
  res.diagnostics = diagnostics_of(sol);
  res.diagnostics.evaluator_check = std::abs(avg_load_symmetric(y, inst) - sol.objective);
  res.partition = std::move(y);
  return res;
}

OptResult optimize_uniform_lp(int K, int N, double M) {
  Instance inst{K, N, M, uniform_popularity(N)};
  inst.validate();
  const auto ck = binom_row(K);

  // Mass variables v_s = C(K,s) z_s again keep coefficients small.
  LinearProgram lp;
  lp.objective.resize(K + 1);
  for (int s = 0; s <= K; ++s) lp.objective[s] = double(K - s) / double(s + 1);
  lp.lower.assign(K + 1, 0.0);
  lp.upper.assign(K + 1, 1.0);
  lp.eq_rows.push_back(std::vector<double>(K + 1, 1.0));
  lp.eq_rhs.push_back(1.0);
  std::vector<double> mem(K + 1, 0.0);
  for (int s = 0; s <= K; ++s) mem[s] = double(s) / double(K);
  lp.ub_rows.push_back(std::move(mem));
  lp.ub_rhs.push_back(M / double(N));

  const LpSolution sol = solve_or_throw(lp);
  OptResult res;
  res.value = sol.objective;
  UniformPartition z;
  z.z.resize(K + 1);
  for (int s = 0; s <= K; ++s) z.z[s] = std::clamp(sol.x[s] / ck[s], 0.0, 1.0);
  res.diagnostics = diagnostics_of(sol);
  res.diagnostics.evaluator_check = std::abs(avg_load_uniform(z, K) - sol.objective);
  res.partition = std::move(z);
  return res;
}

OptResult uniform_closed_form(int K, int N, double M) {
  Instance inst{K, N, M, uniform_popularity(N)};
  inst.validate();
  const double t_real = double(K) * M / double(N);
  const double t_round = std::round(t_real);
  if (std::abs(t_real - t_round) > 1e-12)
    throw PreconditionError("uniform_closed_form: KM/N = " + std::to_string(t_real) +
                            " is not an integer; use optimize_uniform_lp instead");
  const int t = int(t_round);

  UniformPartition z;
  z.z.assign(K + 1, 0.0);
  z.z[t] = 1.0 / binom(K, t);

  OptResult res;
  res.value = double(K) * (1.0 - M / double(N)) / (1.0 + t_real);
  res.diagnostics.evaluator_check = std::abs(avg_load_uniform(z, K) - res.value);
  res.partition = std::move(z);
  return res;
}

OptResult optimize_full_oracle(const Instance& inst, double tuple_cap) {
  inst.validate();
  const int K = inst.K, N = inst.N;
  const double tuples = std::pow(double(N) + 1.0, K);
  if (tuples > tuple_cap)
    throw CapacityError("optimize_full_oracle: (N+1)^K = " + std::to_string(tuples) +
                        " exceeds the cap " + std::to_string(tuple_cap));

  const std::uint32_t masks = 1u << K;
  const int nx = N << K;

  LinearProgram lp;
  lp.objective.assign(nx, 0.0);
  lp.lower.assign(nx, 0.0);
  lp.upper.assign(nx, 1.0);

  // Partition of unity per file.
  for (int n = 0; n < N; ++n) {
    std::vector<double> row(nx, 0.0);
    for (std::uint32_t m = 0; m < masks; ++m) row[(n << K) + m] = 1.0;
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }
  // Per-user memory.
  for (int k = 0; k < K; ++k) {
    std::vector<double> row(nx, 0.0);
    for (int n = 0; n < N; ++n)
      for (std::uint32_t m = 0; m < masks; ++m)
        if (m >> k & 1u) row[(n << K) + m] = 1.0;
    lp.ub_rows.push_back(std::move(row));
    lp.ub_rhs.push_back(inst.M);
  }

  // Epigraph variable per (user set S, requests of S): t >= x(d_k, S\{k}).
  std::vector<int> users, d;
  for (std::uint32_t S = 1; S < masks; ++S) {
    users.clear();
    for (int k = 0; k < K; ++k)
      if (S >> k & 1u) users.push_back(k);
    const int s = int(users.size());
    d.assign(s, 1);
    for (;;) {
      double weight = 1.0;
      for (int k = 0; k < s; ++k) weight *= inst.pop.probs[d[k] - 1];
      const int t = lp.num_vars();
      lp.objective.push_back(weight);
      lp.lower.push_back(0.0);
      lp.upper.push_back(kInf);
      for (int k = 0; k < s; ++k) {
        std::vector<double> row(t + 1, 0.0);
        row[((d[k] - 1) << K) + int(S ^ (1u << users[k]))] = 1.0;
        row[t] = -1.0;
        lp.ub_rows.push_back(std::move(row));
        lp.ub_rhs.push_back(0.0);
      }
      int k = 0;
      while (k < s && d[k] == N) d[k++] = 1;
      if (k == s) break;
      ++d[k];
    }
  }
  for (auto& row : lp.eq_rows) row.resize(lp.num_vars(), 0.0);
  for (auto& row : lp.ub_rows) row.resize(lp.num_vars(), 0.0);

  const LpSolution sol = solve_or_throw(lp);
  OptResult res;
  res.value = sol.objective;
  FullPartition x = FullPartition::zeros(K, N);
  for (int n = 0; n < N; ++n)
    for (std::uint32_t m = 0; m < masks; ++m) x.at(n, m) = std::clamp(sol.x[(n << K) + m], 0.0, 1.0);
  res.diagnostics = diagnostics_of(sol);
  res.diagnostics.evaluator_check = std::abs(avg_load_bruteforce(x, inst) - sol.objective);
  res.partition = std::move(x);
  return res;
}

OptResult baseline_mn_centralized(const Instance& inst) {
  inst.validate();
  const int K = inst.K;
  const double t_real = double(K) * inst.M / double(inst.N);

  UniformPartition z;
  z.z.assign(K + 1, 0.0);
  if (std::abs(t_real - std::round(t_real)) <= 1e-9) {
    const int t = int(std::round(t_real));
    z.z[t] = 1.0 / binom(K, t);
  } else {
    // Memory sharing: interpolate the two adjacent integer-point placements.
    const int lo = int(std::floor(t_real));
    const int hi = lo + 1;
    const double lam = (double(hi) - t_real) / double(hi - lo);
    z.z[lo] = lam / binom(K, lo);
    z.z[hi] = (1.0 - lam) / binom(K, hi);
  }

  OptResult res;
  const SymmetricPartition y = expand_uniform(z, inst.N);
  res.value = avg_load_monotone(y, inst);
  res.diagnostics.evaluator_check = 0.0;
  res.partition = std::move(z);
  return res;
}

KktCertificate verify_kkt_uniform(const UniformPartition& z, int K, int N, double M) {
  Instance inst{K, N, M, uniform_popularity(N)};
  inst.validate();
  const double t_real = double(K) * M / double(N);
  if (std::abs(t_real - std::round(t_real)) > 1e-12)
    throw PreconditionError("verify_kkt_uniform: KM/N must be an integer");
  const int t = int(std::round(t_real));
  const auto ck = binom_row(K);

  KktCertificate cert;
  cert.eta.assign(K + 1, 0.0);
  if (t == 0) {
    // Boundary family: any theta in (0, K+1] works; take the midpoint.
    cert.theta = 0.5 * double(K + 1);
    cert.nu = double(K);
    for (int s = 0; s <= K; ++s)
      cert.eta[s] = ck[s] * (double(K - s) / double(s + 1) + cert.theta * s - cert.nu);
  } else if (t == K) {
    // Boundary family: any theta in (0, 1/(K+1)]; take the midpoint.
    cert.theta = 0.5 / double(K + 1);
    cert.nu = double(K) * cert.theta;
    for (int s = 0; s <= K; ++s)
      cert.eta[s] = ck[s] * (double(K - s) / double(s + 1) + cert.theta * s - cert.nu);
  } else {
    const double tp1 = double(t) + 1.0;
    cert.theta = double(K + 1) / (tp1 * tp1);
    cert.nu = (2.0 * K * t + K - double(t) * t) / (tp1 * tp1);
    for (int s = 0; s <= K; ++s) {
      const double dev = double(s) - double(t);
      cert.eta[s] = ck[s] / double(s + 1) * double(K + 1) / (tp1 * tp1) * dev * dev;
    }
  }

  double worst = 0.0;
  // (i) primal feasibility of the claimed optimum.
  const auto rep = check_uniform_feasible(z, inst);
  for (const auto& v : rep.violations) worst = std::max(worst, v.amount);
  // (ii) dual feasibility.
  worst = std::max(worst, -cert.theta);
  for (int s = 0; s <= K; ++s) worst = std::max(worst, -cert.eta[s]);
  // (iii) complementary slackness.
  double mem = 0.0;
  for (int s = 0; s <= K; ++s) mem += ck[s] * s * z.z[s];
  worst = std::max(worst, std::abs(cert.theta * (mem - t_real)));
  for (int s = 0; s <= K; ++s) worst = std::max(worst, std::abs(cert.eta[s] * z.z[s]));
  // (iv) stationarity: C(K,s)(K-s)/(s+1) - eta_s + theta s C(K,s) - nu C(K,s) = 0.
  for (int s = 0; s <= K; ++s) {
    const double st = ck[s] * double(K - s) / double(s + 1) - cert.eta[s] + cert.theta * s * ck[s] - cert.nu * ck[s];
    worst = std::max(worst, std::abs(st));
  }

  cert.h_min = kInf;
  for (int s = 0; s <= K; ++s) cert.h_min = std::min(cert.h_min, cert.h(double(s), K));
  cert.h_at_t = cert.h(t_real, K);
  cert.max_residual = worst;
  cert.valid = worst <= 1e-7 && cert.h_min >= -1e-9 && std::abs(cert.h_at_t) <= 1e-9;
  return cert;
}

}  // namespace ccopt
