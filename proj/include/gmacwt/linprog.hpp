#pragma once

#include <vector>

namespace gmacwt {

/// Small dense linear program: maximize c.x subject to A x <= b, x >= 0.
/// Sized for the split solver's systems (tens of rows); not a general
/// sparse solver.
struct LpProblem {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded } status =
      Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_lp(const LpProblem& problem);

}  // namespace gmacwt
