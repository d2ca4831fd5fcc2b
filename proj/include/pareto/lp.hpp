#pragma once

#include "pareto/core.hpp"

namespace pareto {

/// min c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lo <= x <= hi.
/// Empty matrices mean no rows; empty bounds mean x >= 0. Infinite bounds
/// are allowed.
struct LpProblem {
  Vec c;
  Mat A_ub;
  Vec b_ub;
  Mat A_eq;
  Vec b_eq;
  Vec lo;
  Vec hi;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Vec x;
  double value = 0;
  int pivots = 0;
};

/// Two-phase dense tableau simplex. Desk scale only.
LpResult solve_lp(const LpProblem &p, double tol = 1e-9);

/// Like solve_lp but throws SolverError unless the status is optimal.
LpResult solve_lp_or_throw(const LpProblem &p, const char *what);

} // namespace pareto
