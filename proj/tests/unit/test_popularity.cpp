#include <doctest.h>

#include <cmath>
#include <random>

#include "ccopt/errors.hpp"
#include "ccopt/popularity.hpp"

using namespace ccopt;

TEST_CASE("zipf with zero exponent is uniform") {
  const Popularity p = zipf(4, 0.0);
  for (double v : p.probs) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("zipf N=2 gamma=1") {
  const Popularity p = zipf(2, 1.0);
  CHECK(p.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(p.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("zipf matches an extended-precision recomputation") {
  // Independent oracle: same formula in long double.
  const int N = 10;
  const double gamma = 1.3;
  long double total = 0.0L;
  std::vector<long double> w(N);
  for (int n = N; n >= 1; --n) {
    w[n - 1] = powl((long double)n, -(long double)gamma);
    total += w[n - 1];
  }
  const Popularity p = zipf(N, gamma);
  for (int n = 0; n < N; ++n) CHECK(std::abs(p.probs[n] - double(w[n] / total)) <= 1e-12);
}

TEST_CASE("zipf entries strictly decrease exactly when gamma > 0") {
  const Popularity skew = zipf(6, 0.7);
  for (int n = 0; n + 1 < 6; ++n) CHECK(skew.probs[n] > skew.probs[n + 1]);
  const Popularity flat = zipf(6, 0.0);
  for (int n = 0; n + 1 < 6; ++n) CHECK(flat.probs[n] == flat.probs[n + 1]);
}

TEST_CASE("zipf rejects bad arguments") {
  CHECK_THROWS_AS(zipf(0, 1.0), InvalidInstanceError);
  CHECK_THROWS_AS(zipf(3, -0.5), InvalidInstanceError);
}

TEST_CASE("from_weights sorts, normalizes and reports the permutation") {
  {
    const auto [p, perm] = from_weights({1.0, 3.0});
    CHECK(p.probs[0] == doctest::Approx(0.75));
    CHECK(p.probs[1] == doctest::Approx(0.25));
    CHECK(perm == std::vector<int>{2, 1});
  }
  {
    const auto [p, perm] = from_weights({2.0, 2.0});
    CHECK(p.probs[0] == doctest::Approx(0.5));
    CHECK(perm == std::vector<int>{1, 2});  // stable tie
  }
  {
    const auto [p, perm] = from_weights({1.0, 2.0, 1.0});
    CHECK(p.probs[0] == doctest::Approx(0.5));
    CHECK(p.probs[1] == doctest::Approx(0.25));
    CHECK(p.probs[2] == doctest::Approx(0.25));
    CHECK(perm == std::vector<int>{2, 1, 3});
  }
}

TEST_CASE("from_weights rejects degenerate input") {
  CHECK_THROWS_AS(from_weights({0.0, 0.0}), InvalidPopularityError);
  CHECK_THROWS_AS(from_weights({1.0, -2.0}), InvalidPopularityError);
  CHECK_THROWS_AS(from_weights({}), InvalidPopularityError);
}

TEST_CASE("tail sums") {
  const Popularity u4 = zipf(4, 0.0);
  CHECK(tail_sum(u4, 3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tail_sum(u4, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tail_sum(u4, 5) == 0.0);
  CHECK_THROWS_AS(tail_sum(u4, 0), IndexError);
  CHECK_THROWS_AS(tail_sum(u4, 6), IndexError);
}

TEST_CASE("tail sums are nonincreasing and start at 1 for random weights") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> w(1 + int(rng() % 8));
    for (double& v : w) v = u(rng);
    w[rng() % w.size()] += 0.1;  // keep at least one positive
    const auto [p, perm] = from_weights(w);
    (void)perm;
    CHECK(std::abs(tail_sum(p, 1) - 1.0) <= 1e-12);
    const auto tails = tail_sums(p);
    for (std::size_t n = 0; n + 1 < tails.size(); ++n) CHECK(tails[n] >= tails[n + 1] - 1e-15);
  }
}
