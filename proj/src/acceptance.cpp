#include "ccopt/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "ccopt/bounds.hpp"
#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"
#include "ccopt/evaluator.hpp"
#include "ccopt/optimizer.hpp"
#include "ccopt/sampling.hpp"
#include "ccopt/simulator.hpp"

namespace ccopt::acceptance {

namespace {

struct Checker {
  bool ok = true;
  long checks = 0;
  long failures = 0;
  std::string first_failure;

  void expect(bool cond, const std::function<std::string()>& describe) {
    ++checks;
    if (cond) return;
    if (ok) {
      ok = false;
      first_failure = describe();
    }
    ++failures;
  }
  void expect(bool cond, const std::string& what) {
    expect(cond, [&] { return what; });
  }
  std::string summary() const {
    if (ok) return std::to_string(checks) + " checks";
    std::string s = first_failure;
    if (failures > 1) s += " (and " + std::to_string(failures - 1) + " more of " + std::to_string(checks) + ")";
    return s;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// The structural-property grid shared by criteria 4 and 8: (K, N) pairs
// with K <= 6, N <= 10, plus one cache size per pair for criterion 4.
struct GridPoint {
  int K, N;
  double M;
};

std::vector<GridPoint> structure_grid() {
  return {{2, 2, 1.0},  {2, 5, 1.25}, {2, 10, 5.0}, {3, 3, 1.5}, {3, 7, 3.5},
          {4, 4, 1.0},  {4, 10, 7.5}, {5, 6, 3.0},  {5, 9, 2.25}, {6, 10, 5.0}};
}

// Closed-form equality on the integer memory grid.
CriterionResult criterion1() {
  CriterionResult res;
  res.id = 1;
  res.name = "closed-form uniform optimum matches the LP on the integer memory grid";
  Checker c;
  for (int K = 1; K <= 6; ++K) {
    for (int N = K; N <= 10; ++N) {
      for (int t = 0; t <= K; ++t) {
        const double M = double(t) * N / K;
        const double expected = double(K) * (1.0 - M / N) / (1.0 + t);
        const OptResult lp = optimize_uniform_lp(K, N, M);
        c.expect(std::abs(lp.value - expected) <= 1e-8, [&] {
          return "K=" + std::to_string(K) + " N=" + std::to_string(N) + " t=" + std::to_string(t) +
                 ": LP value " + fmt(lp.value) + " vs closed form " + fmt(expected);
        });
        const auto& z = lp.uniform().z;
        for (int s = 0; s <= K; ++s) {
          const double want = s == t ? 1.0 / binom(K, t) : 0.0;
          c.expect(std::abs(z[s] - want) <= 1e-7, [&] {
            return "K=" + std::to_string(K) + " N=" + std::to_string(N) + " t=" + std::to_string(t) +
                   ": z[" + std::to_string(s) + "] = " + fmt(z[s]) + ", expected " + fmt(want);
          });
        }
      }
    }
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// The subset-level oracle optimum equals the per-type LP optimum.
CriterionResult criterion2() {
  CriterionResult res;
  res.id = 2;
  res.name = "subset-level oracle LP and per-type LP agree";
  Checker c;
  const std::pair<int, int> dims[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
  for (const auto& [K, N] : dims) {
    for (double gamma : {0.0, 1.0, 2.0}) {
      for (double M = 0.0; M <= N + 1e-9; M += 0.5) {
        Instance inst{K, N, M, zipf(N, gamma)};
        const OptResult oracle = optimize_full_oracle(inst);
        const OptResult fast = optimize_placement(inst);
        c.expect(std::abs(oracle.value - fast.value) <= 1e-7, [&] {
          return "K=" + std::to_string(K) + " N=" + std::to_string(N) + " gamma=" + fmt(gamma) +
                 " M=" + fmt(M) + ": oracle " + fmt(oracle.value) + " vs LP " + fmt(fast.value);
        });
      }
    }
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// The three evaluators agree on random feasible monotone partitions.
CriterionResult criterion3() {
  CriterionResult res;
  res.id = 3;
  res.name = "brute-force, tuple and closed-form evaluators agree";
  Checker c;
  std::mt19937_64 rng(20250811);
  std::uniform_int_distribution<int> dim(2, 4);
  std::uniform_real_distribution<double> gam(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int K = dim(rng), N = dim(rng);
    double used = 0.0;
    const SymmetricPartition y = sample_monotone_symmetric(rng, K, N, &used);
    Instance inst{K, N, std::min(double(N), used + 1e-12), zipf(N, gam(rng))};
    const double bf = avg_load_bruteforce(expand_symmetric(y), inst);
    const double sym = avg_load_symmetric(y, inst);
    const double mono = avg_load_monotone(y, inst);
    c.expect(std::abs(bf - sym) <= 1e-10 && std::abs(sym - mono) <= 1e-10 && std::abs(bf - mono) <= 1e-10, [&] {
      return "trial " + std::to_string(trial) + " (K=" + std::to_string(K) + ", N=" + std::to_string(N) +
             "): bruteforce " + fmt(bf) + ", tuple " + fmt(sym) + ", closed form " + fmt(mono);
    });
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// Structure of optima: monotone rows; under uniform popularity identical
// rows and the memory-share grouping biconditional.
CriterionResult criterion4() {
  CriterionResult res;
  res.id = 4;
  res.name = "optimal placements are monotone; uniform popularity gives identical rows";
  Checker c;
  for (const auto& gp : structure_grid()) {
    for (double gamma : {0.5, 1.0, 1.5}) {
      Instance inst{gp.K, gp.N, gp.M, zipf(gp.N, gamma)};
      const OptResult opt = optimize_placement(inst);
      const auto& y = opt.symmetric().y;
      for (int n = 0; n + 1 < gp.N; ++n)
        for (int s = 1; s <= gp.K; ++s)
          c.expect(y[n][s] >= y[n + 1][s] - 1e-8, [&] {
            return "K=" + std::to_string(gp.K) + " N=" + std::to_string(gp.N) + " gamma=" + fmt(gamma) +
                   ": y[" + std::to_string(n + 1) + "][" + std::to_string(s) + "] < next row";
          });
    }
    Instance inst{gp.K, gp.N, gp.M, zipf(gp.N, 0.0)};
    const OptResult opt = optimize_placement(inst);
    const auto& y = opt.symmetric().y;
    for (int n = 1; n < gp.N; ++n)
      for (int s = 0; s <= gp.K; ++s)
        c.expect(std::abs(y[n][s] - y[0][s]) <= 1e-8, [&] {
          return "uniform K=" + std::to_string(gp.K) + " N=" + std::to_string(gp.N) + ": rows differ at file " +
                 std::to_string(n + 1) + ", type " + std::to_string(s);
        });
    if (gp.M > 0.0) {
      SymmetricPartition sp;
      sp.y = y;
      const auto q = memory_shares(sp, gp.M);
      for (int n1 = 0; n1 < gp.N; ++n1)
        for (int n2 = n1 + 1; n2 < gp.N; ++n2) {
          double row_gap = 0.0;
          for (int s = 0; s <= gp.K; ++s) row_gap = std::max(row_gap, std::abs(y[n1][s] - y[n2][s]));
          const bool q_equal = std::abs(q[n1] - q[n2]) <= 1e-8;
          const bool rows_equal = row_gap <= 1e-8;
          c.expect(q_equal == rows_equal, [&] {
            return "grouping biconditional fails for files " + std::to_string(n1 + 1) + "," +
                   std::to_string(n2 + 1) + " at K=" + std::to_string(gp.K) + " N=" + std::to_string(gp.N);
          });
        }
    }
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// 50 placements realized with F * y exactly integral: 44 random monotone
// symmetric draws plus the six closed-form uniform optima for K <= 4, whose
// denominators C(K,t) divide the chosen F.
std::vector<SampledRealization> simulator_instances() {
  std::vector<SampledRealization> out;
  std::mt19937_64 pick(424242);
  std::uniform_int_distribution<int> kd(2, 4), nd(2, 4);
  std::uniform_real_distribution<double> gam(0.0, 2.0);
  for (int i = 0; i < 44; ++i) out.push_back(sample_integer_realization(1000 + i, kd(pick), nd(pick), gam(pick)));
  for (int K = 2; K <= 4; ++K) {
    for (int t = 1; t < K; ++t) {
      const int N = K;
      SampledRealization si;
      si.inst = Instance{K, N, double(t) * N / K, uniform_popularity(N)};
      const OptResult cf = uniform_closed_form(K, N, si.inst.M);
      si.y = expand_uniform(cf.uniform(), N);
      si.x = expand_symmetric(si.y);
      const int F = 24 * int(binom(K, t));
      si.real = quantize(si.x, F, si.inst, 2000 + K * 10 + t);
      out.push_back(std::move(si));
    }
  }
  return out;
}

void for_all_demands(const Instance& inst, const std::function<void(const DemandVector&)>& fn) {
  DemandVector d;
  d.d.assign(inst.K, 1);
  for (;;) {
    fn(d);
    int k = 0;
    while (k < inst.K && d.d[k] == inst.N) d.d[k++] = 1;
    if (k == inst.K) return;
    ++d.d[k];
  }
}

// Transmitted units match the load formula exactly and every user decodes.
CriterionResult criterion5() {
  CriterionResult res;
  res.id = 5;
  res.name = "simulated transmissions equal the load formula and always decode";
  Checker c;
  for (const auto& si : simulator_instances()) {
    for_all_demands(si.inst, [&](const DemandVector& d) {
      const auto transcript = deliver_zero_pad(si.real, d);
      const double simulated = double(transcript.total_units()) / si.real.F;
      const double formula = load_for_demand(si.x, d, si.inst);
      c.expect(std::abs(simulated - formula) <= 1e-9, [&] {
        return "K=" + std::to_string(si.inst.K) + " N=" + std::to_string(si.inst.N) + " seed=" +
               std::to_string(si.real.seed) + ": simulated " + fmt(simulated) + " vs formula " + fmt(formula);
      });
      c.expect(decode(si.real, transcript, d), "a user failed to decode a zero-padded transcript");
    });
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// Appending delivery transmits exactly as many units as zero padding.
CriterionResult criterion6() {
  CriterionResult res;
  res.id = 6;
  res.name = "appending delivery totals equal zero-padding totals, demand by demand";
  Checker c;
  for (const auto& si : simulator_instances()) {
    for_all_demands(si.inst, [&](const DemandVector& d) {
      const long zp = deliver_zero_pad(si.real, d).total_units();
      const long ap = deliver_hcd(si.real, d).total_units();
      c.expect(zp == ap, [&] {
        return "K=" + std::to_string(si.inst.K) + " N=" + std::to_string(si.inst.N) + " seed=" +
               std::to_string(si.real.seed) + ": zero-pad " + std::to_string(zp) + " units vs appending " +
               std::to_string(ap);
      });
    });
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// The delivery grouping is a proper coloring of the conflict graph.
CriterionResult criterion7() {
  CriterionResult res;
  res.id = 7;
  res.name = "delivery grouping properly colors the conflict graph";
  Checker c;
  for (const auto& si : simulator_instances()) {
    for_all_demands(si.inst, [&](const DemandVector& d) {
      c.expect(coloring_check(si.real, d), [&] {
        return "improper coloring at K=" + std::to_string(si.inst.K) + " N=" + std::to_string(si.inst.N) +
               " seed=" + std::to_string(si.real.seed);
      });
    });
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// Bounds sandwich the optimum; genie bound reduces to the uniform bound
// under uniform popularity; the baseline never beats the optimum.
CriterionResult criterion8() {
  CriterionResult res;
  res.id = 8;
  res.name = "converse bounds sandwich the optimum and reduce correctly";
  Checker c;
  for (const auto& gp : structure_grid()) {
    for (double gamma : {0.0, 0.5, 1.0, 1.5}) {
      for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Instance inst{gp.K, gp.N, frac * gp.N, zipf(gp.N, gamma)};
        const double opt = optimize_placement(inst).value;
        const GenieBound genie = lb_genie(inst);
        c.expect(genie.value >= 0.0 && genie.value <= opt + 1e-7, [&] {
          return "K=" + std::to_string(gp.K) + " N=" + std::to_string(gp.N) + " gamma=" + fmt(gamma) +
                 " M=" + fmt(inst.M) + ": genie bound " + fmt(genie.value) + " vs optimum " + fmt(opt);
        });
        if (gamma == 0.0) {
          c.expect(genie.value == lb_uniform(gp.K, gp.N, inst.M), [&] {
            return "uniform reduction fails at K=" + std::to_string(gp.K) + " N=" + std::to_string(gp.N) +
                   " M=" + fmt(inst.M);
          });
        }
        const double baseline = baseline_mn_centralized(inst).value;
        c.expect(opt <= baseline + 1e-7, [&] {
          return "optimum " + fmt(opt) + " exceeds the single-type baseline " + fmt(baseline) + " at K=" +
                 std::to_string(gp.K) + " N=" + std::to_string(gp.N) + " gamma=" + fmt(gamma) + " M=" + fmt(inst.M);
        });
      }
    }
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

// Explicit dual certificates for the closed-form uniform optimum.
CriterionResult criterion9() {
  CriterionResult res;
  res.id = 9;
  res.name = "dual certificates validate the uniform closed form";
  Checker c;
  for (int K = 2; K <= 8; ++K) {
    for (int t = 1; t <= K - 1; ++t) {
      const int N = K;
      const double M = double(t) * N / K;
      const OptResult cf = uniform_closed_form(K, N, M);
      const KktCertificate cert = verify_kkt_uniform(cf.uniform(), K, N, M);
      c.expect(cert.valid && cert.max_residual <= 1e-7, [&] {
        return "K=" + std::to_string(K) + " t=" + std::to_string(t) + ": residual " + fmt(cert.max_residual) +
               ", h_min " + fmt(cert.h_min) + ", h(t) " + fmt(cert.h_at_t);
      });
    }
  }
  res.passed = c.ok;
  res.detail = c.summary();
  return res;
}

}  // namespace

int num_criteria() { return 9; }

CriterionResult run_criterion(int id) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  CriterionResult res;
  switch (id) {
    case 1: res = criterion1(); break;
    case 2: res = criterion2(); break;
    case 3: res = criterion3(); break;
    case 4: res = criterion4(); break;
    case 5: res = criterion5(); break;
    case 6: res = criterion6(); break;
    case 7: res = criterion7(); break;
    case 8: res = criterion8(); break;
    case 9: res = criterion9(); break;
    default: throw IndexError("acceptance criterion id must be in 1.." + std::to_string(num_criteria()));
  }
  res.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return res;
}

int run(const std::vector<int>& ids, std::ostream& out) {
  std::vector<int> list = ids;
  if (list.empty())
    for (int i = 1; i <= num_criteria(); ++i) list.push_back(i);
  int failures = 0;
  for (int id : list) {
    const CriterionResult r = run_criterion(id);
    out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << r.detail << "] ("
        << r.seconds << " s)\n";
    if (!r.passed) ++failures;
  }
  return failures;
}

}  // namespace ccopt::acceptance
