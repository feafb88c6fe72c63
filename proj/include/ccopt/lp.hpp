#pragma once

#include <vector>

namespace ccopt {

/// Dense standard-form linear program:
///   minimize c.v  subject to  A_eq v = b_eq,  A_ub v <= b_ub,  lo <= v <= hi.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return int(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// Solution with simplex multipliers in the price convention: the reduced
/// cost of variable j is
///   d_j = c_j - sum_i dual_eq[i] A_eq[i][j] - sum_i dual_ub[i] A_ub[i][j],
/// with dual_ub[i] <= 0 for a binding <= row of a minimization (the usual
/// Lagrangian multiplier is its negation). At optimality
///   c.v = dual_eq.b_eq + dual_ub.b_ub + sum_j d_j v_j
/// holds up to the reported duality gap.
struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> dual_eq;
  std::vector<double> dual_ub;
  std::vector<double> reduced_costs;
  long iterations = 0;
  // a-posteriori verification
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
};

struct SolveOptions {
  long iteration_cap = 0;   // 0 = automatic (scales with problem size)
  int variable_cap = 200000;
};

/// Two-phase primal simplex on a dense tableau with bounded variables.
/// Dantzig pricing, switching to Bland's rule after 3 * (rows + cols)
/// iterations; ties broken by lowest index throughout, so identical input
/// yields an identical solution. Throws ShapeError for malformed programs.
LpSolution solve(const LinearProgram& lp, const SolveOptions& opts = {});

}  // namespace ccopt
