#include "ccopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ccopt/errors.hpp"

namespace ccopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;
constexpr double kEnterTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;

void validate_program(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (lp.lower.size() != n || lp.upper.size() != n)
    throw ShapeError("lp: bounds must match the variable count");
  if (lp.eq_rows.size() != lp.eq_rhs.size() || lp.ub_rows.size() != lp.ub_rhs.size())
    throw ShapeError("lp: row blocks must match their rhs vectors");
  for (const auto& row : lp.eq_rows)
    if (row.size() != n) throw ShapeError("lp: equality row width mismatch");
  for (const auto& row : lp.ub_rows)
    if (row.size() != n) throw ShapeError("lp: inequality row width mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lower[j])) throw ShapeError("lp: lower bounds must be finite");
    if (lp.upper[j] < lp.lower[j]) throw ShapeError("lp: lower bound exceeds upper bound");
    if (!std::isfinite(lp.objective[j])) throw ShapeError("lp: non-finite objective coefficient");
  }
}

enum class VarState : char { Basic, AtLower, AtUpper };

// Working problem: columns = structural (shifted to lower bound 0), then one
// slack per <= row, then artificials. Rows with negative shifted rhs are
// negated so the initial basis (slacks + artificials) is feasible.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SolveOptions& opts) : lp_(lp) {
    n_ = lp.num_vars();
    me_ = int(lp.eq_rows.size());
    mu_ = int(lp.ub_rows.size());
    m_ = me_ + mu_;
    cap_ = opts.iteration_cap > 0 ? opts.iteration_cap : 2000 + 200L * (m_ + n_);

    std::vector<double> shifted_rhs(m_);
    row_flip_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      const auto& row = i < me_ ? lp.eq_rows[i] : lp.ub_rows[i - me_];
      double r = i < me_ ? lp.eq_rhs[i] : lp.ub_rhs[i - me_];
      for (int j = 0; j < n_; ++j) r -= row[j] * lp.lower[j];
      shifted_rhs[i] = r;
      if (r < 0.0) row_flip_[i] = -1.0;
    }

    // Column layout.
    slack_col_.resize(mu_);
    for (int i = 0; i < mu_; ++i) slack_col_[i] = n_ + i;
    art_col_.assign(m_, -1);
    int next = n_ + mu_;
    for (int i = 0; i < m_; ++i)
      if (i < me_ || shifted_rhs[i] < 0.0) art_col_[i] = next++;
    cols_ = next;
    bland_after_ = 3L * (m_ + cols_);

    range_.assign(cols_, kInf);
    for (int j = 0; j < n_; ++j) range_[j] = lp.upper[j] - lp.lower[j];
    for (int i = 0; i < m_; ++i)
      if (art_col_[i] >= 0) range_[art_col_[i]] = kInf;  // pinned to 0 after phase 1

    // Dense tableau; initial basis columns are the identity by construction.
    tab_.assign(std::size_t(m_) * cols_, 0.0);
    bhat_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    state_.assign(cols_, VarState::AtLower);
    for (int i = 0; i < m_; ++i) {
      const auto& row = i < me_ ? lp.eq_rows[i] : lp.ub_rows[i - me_];
      double* t = &tab_[std::size_t(i) * cols_];
      for (int j = 0; j < n_; ++j) t[j] = row_flip_[i] * row[j];
      if (i >= me_) t[slack_col_[i - me_]] = row_flip_[i];
      if (art_col_[i] >= 0) t[art_col_[i]] = 1.0;
      bhat_[i] = std::abs(shifted_rhs[i]);
      basis_[i] = art_col_[i] >= 0 ? art_col_[i] : slack_col_[i - me_];
      state_[basis_[i]] = VarState::Basic;
    }
  }

  LpSolution run() {
    LpSolution sol;

    // Phase 1: minimize the sum of artificials.
    std::vector<double> c1(cols_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (art_col_[i] >= 0) c1[art_col_[i]] = 1.0;
    compute_reduced_costs(c1);
    const bool p1 = iterate(/*phase1=*/true);
    if (!p1) {
      sol.status = LpStatus::IterationLimit;
      sol.iterations = iterations_;
      return sol;
    }
    if (phase1_objective() > kPhase1Tol) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    pin_artificials();

    // Phase 2: the real objective over the shifted variables.
    std::vector<double> c2(cols_, 0.0);
    for (int j = 0; j < n_; ++j) c2[j] = lp_.objective[j];
    compute_reduced_costs(c2);
    const bool p2 = iterate(/*phase1=*/false);
    sol.iterations = iterations_;
    if (!p2) {
      sol.status = unbounded_ ? LpStatus::Unbounded : LpStatus::IterationLimit;
      return sol;
    }

    extract(sol);
    verify(sol);
    return sol;
  }

 private:
  double tab(int i, int j) const { return tab_[std::size_t(i) * cols_ + j]; }

  void compute_reduced_costs(const std::vector<double>& cost) {
    dred_ = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* t = &tab_[std::size_t(i) * cols_];
      for (int j = 0; j < cols_; ++j) dred_[j] -= cb * t[j];
    }
  }

  double phase1_objective() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i)
      if (art_col_[i] >= 0 && basis_[i] == art_col_[i]) v += bhat_[i];
    return v;
  }

  bool is_artificial(int j) const { return j >= n_ + mu_; }

  // Drive basic artificials out where a usable pivot exists; rows that stay
  // artificial-basic are redundant and keep a zero artificial. All
  // artificial ranges collapse to zero so they can never move again.
  void pin_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + mu_ || bhat_[i] > kPhase1Tol) continue;
      int q = -1;
      for (int j = 0; j < n_ + mu_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (std::abs(tab(i, j)) > kPivotTol) {
          q = j;
          break;
        }
      }
      if (q >= 0) {
        bhat_[i] = 0.0;
        state_[basis_[i]] = VarState::AtLower;
        pivot(i, q, value_of(q));
      }
    }
    for (int j = n_ + mu_; j < cols_; ++j) range_[j] = 0.0;
  }

  double value_of(int j) const {
    if (state_[j] == VarState::AtUpper) return range_[j];
    return 0.0;  // AtLower (basic values live in bhat_)
  }

  // One simplex phase. Returns true on optimality, false on the iteration
  // cap or (phase 2) unboundedness.
  bool iterate(bool phase1) {
    for (;;) {
      if (iterations_ >= cap_) return false;
      if (phase1 && phase1_objective() <= 0.0) return true;

      const bool bland = iterations_ >= bland_after_;
      int q = -1;
      int dir = 0;
      double best = kEnterTol;
      for (int j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (range_[j] == 0.0) continue;
        if (!phase1 && is_artificial(j)) continue;
        double score = 0.0;
        int d = 0;
        if (state_[j] == VarState::AtLower && dred_[j] < -kEnterTol) {
          score = -dred_[j];
          d = 1;
        } else if (state_[j] == VarState::AtUpper && dred_[j] > kEnterTol) {
          score = dred_[j];
          d = -1;
        } else {
          continue;
        }
        if (bland) {
          q = j;
          dir = d;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
          dir = d;
        }
      }
      if (q < 0) return true;  // no improving column

      // Ratio test: step limited by basic bounds or the entering range.
      double tmax = range_[q];
      int leave = -1;
      bool leave_at_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double a = dir * tab(i, q);
        double lim = kInf;
        bool to_upper = false;
        if (a > kPivotTol) {
          lim = bhat_[i] / a;
        } else if (a < -kPivotTol) {
          if (range_[basis_[i]] == kInf) continue;
          lim = (range_[basis_[i]] - bhat_[i]) / (-a);
          to_upper = true;
        } else {
          continue;
        }
        lim = std::max(lim, 0.0);
        const bool better =
            lim < tmax - 1e-12 || (lim < tmax + 1e-12 && leave >= 0 && basis_[i] < basis_[leave]);
        if (better) {
          tmax = std::min(tmax, lim);
          leave = i;
          leave_at_upper = to_upper;
        }
      }
      if (tmax == kInf) {
        unbounded_ = true;
        return false;
      }

      ++iterations_;
      if (leave < 0) {
        // Bound flip: the entering variable crosses to its other bound.
        for (int i = 0; i < m_; ++i) bhat_[i] -= dir * tab(i, q) * range_[q];
        state_[q] = state_[q] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
        continue;
      }

      const double enter_value = value_of(q) + dir * tmax;
      for (int i = 0; i < m_; ++i)
        if (i != leave) bhat_[i] -= dir * tab(i, q) * tmax;
      state_[basis_[leave]] = leave_at_upper ? VarState::AtUpper : VarState::AtLower;
      pivot(leave, q, enter_value);
    }
  }

  // Gaussian pivot on (row r, column q); the entering variable becomes basic
  // with the given value.
  void pivot(int r, int q, double enter_value) {
    double* pr = &tab_[std::size_t(r) * cols_];
    const double p = pr[q];
    const double inv = 1.0 / p;
    for (int j = 0; j < cols_; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ti = &tab_[std::size_t(i) * cols_];
      const double f = ti[q];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) ti[j] -= f * pr[j];
      ti[q] = 0.0;
    }
    const double fd = dred_[q];
    if (fd != 0.0) {
      for (int j = 0; j < cols_; ++j) dred_[j] -= fd * pr[j];
      dred_[q] = 0.0;
    }
    basis_[r] = q;
    state_[q] = VarState::Basic;
    bhat_[r] = enter_value;
  }

  void extract(LpSolution& sol) const {
    sol.status = LpStatus::Optimal;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      double shifted = state_[j] == VarState::AtUpper ? range_[j] : 0.0;
      sol.x[j] = lp_.lower[j] + shifted;
    }
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) sol.x[basis_[i]] = lp_.lower[basis_[i]] + bhat_[i];

    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += lp_.objective[j] * sol.x[j];

    sol.dual_eq.assign(me_, 0.0);
    for (int i = 0; i < me_; ++i) sol.dual_eq[i] = -row_flip_[i] * dred_[art_col_[i]];
    sol.dual_ub.assign(mu_, 0.0);
    for (int i = 0; i < mu_; ++i) sol.dual_ub[i] = -dred_[slack_col_[i]];
    sol.reduced_costs.assign(dred_.begin(), dred_.begin() + n_);
  }

  void verify(LpSolution& sol) const {
    double pres = 0.0;
    for (int i = 0; i < me_; ++i) {
      double v = -lp_.eq_rhs[i];
      for (int j = 0; j < n_; ++j) v += lp_.eq_rows[i][j] * sol.x[j];
      pres = std::max(pres, std::abs(v));
    }
    std::vector<double> slack(mu_, 0.0);
    for (int i = 0; i < mu_; ++i) {
      double v = -lp_.ub_rhs[i];
      for (int j = 0; j < n_; ++j) v += lp_.ub_rows[i][j] * sol.x[j];
      slack[i] = -v;
      pres = std::max(pres, v);
    }
    for (int j = 0; j < n_; ++j) {
      pres = std::max(pres, lp_.lower[j] - sol.x[j]);
      pres = std::max(pres, sol.x[j] - lp_.upper[j]);
    }
    sol.primal_residual = std::max(pres, 0.0);

    // Sign conditions and complementary slackness.
    double dres = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double d = sol.reduced_costs[j];
      const bool at_lo = sol.x[j] - lp_.lower[j] <= kFeasTol * (1.0 + std::abs(lp_.lower[j]));
      const bool at_hi = lp_.upper[j] - sol.x[j] <= kFeasTol * (1.0 + std::abs(lp_.upper[j]));
      if (at_lo && at_hi) continue;  // fixed variable: any sign
      if (at_lo) dres = std::max(dres, -d);
      else if (at_hi) dres = std::max(dres, d);
      else dres = std::max(dres, std::abs(d));
    }
    for (int i = 0; i < mu_; ++i) {
      dres = std::max(dres, sol.dual_ub[i]);  // must be <= 0
      dres = std::max(dres, std::abs(sol.dual_ub[i] * slack[i]));
    }
    sol.dual_residual = std::max(dres, 0.0);

    double dual_obj = 0.0;
    for (int i = 0; i < me_; ++i) dual_obj += sol.dual_eq[i] * lp_.eq_rhs[i];
    for (int i = 0; i < mu_; ++i) dual_obj += sol.dual_ub[i] * lp_.ub_rhs[i];
    for (int j = 0; j < n_; ++j) dual_obj += sol.reduced_costs[j] * sol.x[j];
    sol.duality_gap = std::abs(sol.objective - dual_obj);
  }

  const LinearProgram& lp_;
  int n_ = 0, me_ = 0, mu_ = 0, m_ = 0, cols_ = 0;
  long cap_ = 0, bland_after_ = 0, iterations_ = 0;
  bool unbounded_ = false;

  std::vector<double> row_flip_;
  std::vector<int> slack_col_;
  std::vector<int> art_col_;
  std::vector<double> range_;
  std::vector<double> tab_;
  std::vector<double> bhat_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  std::vector<double> dred_;
};

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpSolution solve(const LinearProgram& lp, const SolveOptions& opts) {
  validate_program(lp);
  if (lp.num_vars() > opts.variable_cap)
    throw CapacityError("lp: " + std::to_string(lp.num_vars()) + " variables exceed the cap " +
                        std::to_string(opts.variable_cap));
  Simplex simplex(lp, opts);
  return simplex.run();
}

}  // namespace ccopt
