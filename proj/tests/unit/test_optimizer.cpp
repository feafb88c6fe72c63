#include <doctest.h>

#include <cmath>

#include "ccopt/bounds.hpp"
#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"
#include "ccopt/evaluator.hpp"
#include "ccopt/optimizer.hpp"

using namespace ccopt;

namespace {
Instance make_inst(int K, int N, double M, double gamma = 0.0) { return Instance{K, N, M, zipf(N, gamma)}; }
}

TEST_CASE("uniform LP reproduces the known half-cache point") {
  const OptResult r = optimize_uniform_lp(2, 2, 1.0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.uniform().z[0] == doctest::Approx(0.0));
  CHECK(r.uniform().z[1] == doctest::Approx(0.5));
  CHECK(r.uniform().z[2] == doctest::Approx(0.0));
}

TEST_CASE("uniform LP endpoints") {
  const OptResult empty = optimize_uniform_lp(3, 4, 0.0);
  CHECK(empty.value == doctest::Approx(3.0));
  CHECK(empty.uniform().z[0] == doctest::Approx(1.0));

  const OptResult full = optimize_uniform_lp(3, 4, 4.0);
  CHECK(full.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("uniform LP at a third integer point") {
  const OptResult r = optimize_uniform_lp(3, 6, 4.0);  // K M / N = 2
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(r.uniform().z[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("closed form matches its evaluator and the LP") {
  const OptResult cf = uniform_closed_form(4, 10, 5.0);
  CHECK(cf.uniform().z[2] == doctest::Approx(1.0 / 6.0));
  CHECK(cf.value == doctest::Approx(2.0 / 3.0));
  CHECK(uniform_closed_form(3, 3, 3.0).value == doctest::Approx(0.0));
  for (int K = 1; K <= 4; ++K)
    for (int t = 0; t <= K; ++t) {
      const int N = K + 2;
      const double M = double(t) * N / K;
      CHECK(std::abs(uniform_closed_form(K, N, M).value - optimize_uniform_lp(K, N, M).value) <= 1e-8);
    }
  CHECK_THROWS_AS(uniform_closed_form(3, 4, 1.0), PreconditionError);  // KM/N = 3/4
}

TEST_CASE("uniform optimum concentrates on a single type at integer points") {
  for (int K = 2; K <= 5; ++K)
    for (int t = 0; t <= K; ++t) {
      const OptResult r = optimize_uniform_lp(K, K + 1, double(t) * (K + 1) / K);
      int support = 0;
      for (int s = 0; s <= K; ++s)
        if (r.uniform().z[s] > 1e-7) {
          ++support;
          CHECK(s == t);
        }
      CHECK(support == 1);
    }
}

TEST_CASE("general placement LP endpoints and a known uniform point") {
  CHECK(optimize_placement(make_inst(3, 3, 3.0, 1.0)).value == doctest::Approx(0.0).epsilon(1e-9));
  const OptResult empty = optimize_placement(make_inst(3, 3, 0.0, 1.0));
  CHECK(empty.value == doctest::Approx(3.0).epsilon(1e-9));
  for (int n = 0; n < 3; ++n) CHECK(empty.symmetric().y[n][0] == doctest::Approx(1.0));

  CHECK(optimize_placement(make_inst(4, 8, 2.0)).value == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("optimal placements reproduce their value through the evaluator") {
  for (double gamma : {0.0, 0.8, 1.6}) {
    const Instance inst = make_inst(4, 6, 2.5, gamma);
    const OptResult r = optimize_placement(inst);
    CHECK(r.diagnostics.evaluator_check <= 1e-8);
    CHECK(is_monotone(r.symmetric()));
    CHECK(check_symmetric_feasible(r.symmetric(), inst).feasible);
  }
}

TEST_CASE("subset-level oracle agrees with the per-type LP") {
  const OptResult uniform_oracle = optimize_full_oracle(make_inst(2, 2, 1.0));
  CHECK(uniform_oracle.value == doctest::Approx(0.5).epsilon(1e-9));

  CHECK(optimize_full_oracle(make_inst(2, 3, 0.0, 1.0)).value == doctest::Approx(2.0).epsilon(1e-9));

  const Instance inst = make_inst(3, 3, 1.0, 1.0);
  const double oracle = optimize_full_oracle(inst).value;
  const double fast = optimize_placement(inst).value;
  CHECK(std::abs(oracle - fast) <= 1e-7);
}

TEST_CASE("oracle capacity guard names the cap") {
  CHECK_THROWS_AS(optimize_full_oracle(make_inst(8, 9, 1.0)), CapacityError);
}

TEST_CASE("monotonicity rows are free under mild skew") {
  for (double gamma : {0.0, 0.5, 1.0}) {
    const Instance inst = make_inst(3, 3, 1.5, gamma);
    const OptResult epi = optimize_placement_epigraph(inst);
    const OptResult mono = optimize_placement(inst);
    CHECK(std::abs(epi.value - mono.value) <= 1e-7);
  }
}

TEST_CASE("monotonicity rows can cost optimality under strong skew") {
  // With p = (0.8, 0.2) and M = 3/2, fully caching file 1 and splitting
  // file 2 across the users loads 0.18 but has y[1][1] = 0 < y[2][1] = 1/2;
  // the best placement with nonincreasing rows loads 0.20.
  const Instance inst = make_inst(2, 2, 1.5, 2.0);
  const double unrestricted = optimize_placement_epigraph(inst).value;
  const double oracle = optimize_full_oracle(inst).value;
  const double monotone = optimize_placement(inst).value;
  const double monotone_epi = optimize_placement_epigraph(inst, 5000, true).value;
  CHECK(unrestricted == doctest::Approx(0.18).epsilon(1e-9));
  CHECK(oracle == doctest::Approx(0.18).epsilon(1e-9));
  CHECK(monotone == doctest::Approx(0.20).epsilon(1e-9));
  CHECK(monotone_epi == doctest::Approx(monotone).epsilon(1e-9));
  CHECK(unrestricted <= monotone + 1e-9);
}

TEST_CASE("optimal value decreases in the cache size") {
  double prev = 1e30;
  for (double M : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0}) {
    const double v = optimize_placement(make_inst(3, 4, M, 1.2)).value;
    CHECK(v <= prev + 1e-9);
    if (prev > 1e-9 && prev < 1e29) CHECK(v < prev);  // strictly, while positive
    prev = v;
  }
}

TEST_CASE("explicit dual certificate at the half-cache point") {
  const OptResult cf = uniform_closed_form(2, 2, 1.0);
  const KktCertificate cert = verify_kkt_uniform(cf.uniform(), 2, 2, 1.0);
  CHECK(cert.theta == doctest::Approx(0.75));
  CHECK(cert.nu == doctest::Approx(1.25));
  CHECK(cert.eta[1] == doctest::Approx(0.0));
  CHECK(std::abs(cert.h_at_t) <= 1e-12);
  CHECK(cert.valid);
}

TEST_CASE("dual certificates cover the boundary cache sizes") {
  for (int K = 2; K <= 6; ++K) {
    const int N = K + 1;
    for (double M : {0.0, double(N)}) {
      const OptResult cf = uniform_closed_form(K, N, M);
      const KktCertificate cert = verify_kkt_uniform(cf.uniform(), K, N, M);
      CHECK(cert.valid);
      CHECK(cert.max_residual <= 1e-7);
    }
  }
  CHECK_THROWS_AS(verify_kkt_uniform(uniform_closed_form(2, 2, 1.0).uniform(), 2, 2, 0.7), PreconditionError);
}

TEST_CASE("single-type baseline") {
  CHECK(baseline_mn_centralized(make_inst(4, 8, 2.0)).value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(baseline_mn_centralized(make_inst(3, 5, 5.0, 1.3)).value == doctest::Approx(0.0));

  // Memory sharing at a non-integer point keeps a feasible placement.
  const Instance frac = make_inst(4, 10, 3.7, 1.3);
  const OptResult base = baseline_mn_centralized(frac);
  CHECK(check_uniform_feasible(base.uniform(), frac).feasible);

  for (double M : {2.5, 5.0, 7.5, 10.0}) {
    const Instance inst = make_inst(4, 10, M, 1.3);
    CHECK(baseline_mn_centralized(inst).value >= optimize_placement(inst).value - 1e-7);
  }
}

TEST_CASE("zero-probability files are handled end to end") {
  // Two dead files sort last and get no cache; the rest behaves as usual.
  const auto [pop, perm] = from_weights({0.0, 3.0, 1.0, 0.0});
  (void)perm;
  const Instance inst{2, 4, 1.0, pop};
  const OptResult r = optimize_placement(inst);
  CHECK(r.diagnostics.evaluator_check <= 1e-8);
  CHECK(is_monotone(r.symmetric()));
  for (int n = 2; n < 4; ++n)
    for (int s = 1; s <= 2; ++s) CHECK(r.symmetric().y[n][s] <= 1e-8);
  const double oracle = optimize_full_oracle(inst).value;
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-7));
  CHECK(lb_genie(inst).value <= r.value + 1e-7);
}

TEST_CASE("an extreme Zipf exponent degenerates gracefully") {
  // gamma = 60 underflows every weight but the first; the pmf is (1, 0, ...).
  const Instance inst{2, 3, 1.0, zipf(3, 60.0)};
  CHECK(inst.pop.probs[0] == doctest::Approx(1.0));
  const OptResult r = optimize_placement(inst);
  // Only file 1 matters: splitting it across both users halves the load...
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
  // ...and with M = 1 it can in fact be fully cached at both users.
  CHECK(r.symmetric().y[0][2] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("paper-scale Zipf instance solves cleanly and groups files by type") {
  const Instance inst = make_inst(16, 30, 5.0, 1.0);
  const OptResult r = optimize_placement(inst);
  CHECK(r.diagnostics.primal_residual <= 1e-9);
  CHECK(r.diagnostics.evaluator_check <= 1e-8);
  CHECK(is_monotone(r.symmetric()));
  // The optimum concentrates each file on at most two adjacent-ish types:
  // a head group cached at types {2,3} and a tail group at {0,2}.
  const auto& y = r.symmetric().y;
  for (int n = 0; n < 27; ++n) {
    CHECK(y[n][2] > 1e-8);
    CHECK(y[n][0] <= 1e-8);
  }
  for (int n = 27; n < 30; ++n) {
    CHECK(y[n][0] > 1e-8);
    CHECK(y[n][3] <= 1e-8);
  }
  // Files inside one group share the memory allocation, across groups not.
  const auto q = memory_shares(r.symmetric(), inst.M);
  for (int n = 1; n < 27; ++n) CHECK(std::abs(q[n] - q[0]) <= 1e-8);
  for (int n = 28; n < 30; ++n) CHECK(std::abs(q[n] - q[27]) <= 1e-8);
  CHECK(q[0] > q[27] + 1e-6);
}

TEST_CASE("memory shares of an optimum group files exactly with equal rows") {
  const Instance inst = make_inst(5, 8, 2.0, 1.2);
  const OptResult r = optimize_placement(inst);
  const auto& y = r.symmetric().y;
  const auto q = memory_shares(r.symmetric(), inst.M);
  for (int a = 0; a < inst.N; ++a)
    for (int b = a + 1; b < inst.N; ++b) {
      double gap = 0.0;
      for (int s = 0; s <= inst.K; ++s) gap = std::max(gap, std::abs(y[a][s] - y[b][s]));
      CHECK((std::abs(q[a] - q[b]) <= 1e-8) == (gap <= 1e-8));
    }
}
