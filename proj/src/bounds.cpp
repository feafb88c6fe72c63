#include "ccopt/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ccopt/combinatorics.hpp"
#include "ccopt/errors.hpp"

namespace ccopt {

std::vector<double> lb_uniform_terms(int K, int N, double M) {
  if (K < 1 || N < 1) throw InvalidInstanceError("lb_uniform: K and N must be >= 1");
  if (!std::isfinite(M) || M < 0.0) throw InvalidInstanceError("lb_uniform: M must be finite and >= 0");
  std::vector<double> terms(K, 0.0);
  for (int l = 1; l <= K; ++l) {
    const double hit = 1.0 - std::pow(1.0 - 1.0 / double(N), l);
    const double cut = hit * (double(N) - double(l) * M);
    const double slope = hit * double(N) - double(l) * double(l + 1) / (2.0 * double(N)) * M;
    terms[l - 1] = std::max({cut, slope, 0.0});
  }
  return terms;
}

double lb_uniform(int K, int N, double M) {
  const auto terms = lb_uniform_terms(K, N, M);
  return *std::max_element(terms.begin(), terms.end());
}

GenieBound lb_genie(const Instance& inst) {
  inst.validate();
  GenieBound out;
  out.per_nprime.assign(inst.N, 0.0);
  for (int np = 1; np <= inst.N; ++np) {
    // q = N' p_{N'} <= 1 because the pmf is sorted nonincreasing. Snap to 1
    // within the pmf normalization tolerance so the uniform case reduces to
    // lb_uniform exactly instead of picking up rounding dust from 1/N.
    double q = std::clamp(double(np) * inst.pop.probs[np - 1], 0.0, 1.0);
    if (1.0 - q <= 1e-12) q = 1.0;
    KahanSum sum;
    for (int kp = 1; kp <= inst.K; ++kp) {
      const double w = binom(inst.K, kp) * std::pow(q, kp) * std::pow(1.0 - q, inst.K - kp);
      if (w > 0.0) sum.add(w * lb_uniform(kp, np, inst.M));
    }
    out.per_nprime[np - 1] = sum.value();
    if (out.per_nprime[np - 1] > out.value) {
      out.value = out.per_nprime[np - 1];
      out.argmax_nprime = np;
    }
  }
  if (out.argmax_nprime == 0) out.argmax_nprime = inst.N;  // all-zero bound
  return out;
}

}  // namespace ccopt
