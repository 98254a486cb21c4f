#include "gmacwt/linprog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace gmacwt {

namespace {

constexpr double kEps = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-phase dense simplex over the tableau D with deterministic
// lexicographic pivot selection (stalls are broken by variable id, so runs
// are reproducible bit-for-bit on the same inputs).
struct Simplex {
  int m, n;
  std::vector<int> nonbasic, basic;
  std::vector<std::vector<double>> d;

  Simplex(const LpProblem& p)
      : m(static_cast<int>(p.b.size())),
        n(static_cast<int>(p.c.size())),
        nonbasic(n + 1),
        basic(m),
        d(m + 2, std::vector<double>(n + 2, 0.0)) {
    for (int i = 0; i < m; ++i) {
      basic[i] = n + i;
      for (int j = 0; j < n; ++j) d[i][j] = p.a[i][j];
      d[i][n] = -1.0;
      d[i][n + 1] = p.b[i];
    }
    for (int j = 0; j < n; ++j) {
      nonbasic[j] = j;
      d[m][j] = -p.c[j];
    }
    nonbasic[n] = -1;
    d[m + 1][n] = 1.0;
  }

  void pivot(int r, int s) {
    double* a = d[r].data();
    const double inv = 1.0 / a[s];
    for (int i = 0; i < m + 2; ++i) {
      if (i == r || std::abs(d[i][s]) <= kEps) continue;
      double* row = d[i].data();
      const double f = row[s] * inv;
      for (int j = 0; j < n + 2; ++j) row[j] -= a[j] * f;
      row[s] = a[s] * f;  // undone by the column pass below
    }
    for (int j = 0; j < n + 2; ++j)
      if (j != s) d[r][j] *= inv;
    for (int i = 0; i < m + 2; ++i)
      if (i != r) d[i][s] *= -inv;
    d[r][s] = inv;
    std::swap(basic[r], nonbasic[s]);
  }

  bool run(int phase) {
    const int goal = m + phase - 1;
    while (true) {
      int s = -1;
      for (int j = 0; j < n + 1; ++j) {
        if (nonbasic[j] == -phase) continue;
        if (s == -1 || d[goal][j] < d[goal][s] ||
            (d[goal][j] == d[goal][s] && nonbasic[j] < nonbasic[s]))
          s = j;
      }
      if (d[goal][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (d[i][s] <= kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = d[i][n + 1] * d[r][s];
        const double rhs = d[r][n + 1] * d[i][s];
        if (lhs < rhs || (lhs == rhs && basic[i] < basic[r])) r = i;
      }
      if (r == -1) return false;  // unbounded direction
      pivot(r, s);
    }
  }
};

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const int m = static_cast<int>(problem.b.size());
  const int n = static_cast<int>(problem.c.size());
  if (static_cast<int>(problem.a.size()) != m)
    throw std::invalid_argument("solve_lp: row count mismatch");
  for (const auto& row : problem.a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_lp: column count mismatch");

  Simplex sx(problem);
  LpResult result;

  int r = 0;
  for (int i = 1; i < m; ++i)
    if (sx.d[i][n + 1] < sx.d[r][n + 1]) r = i;
  if (m > 0 && sx.d[r][n + 1] < -kEps) {
    sx.pivot(r, n);
    if (!sx.run(2) || sx.d[m + 1][n + 1] < -kEps) {
      result.status = LpResult::Status::kInfeasible;
      return result;
    }
    for (int i = 0; i < m; ++i) {
      if (sx.basic[i] != -1) continue;
      int s = 0;
      for (int j = 1; j < n + 1; ++j)
        if (sx.d[i][j] < sx.d[i][s] ||
            (sx.d[i][j] == sx.d[i][s] && sx.nonbasic[j] < sx.nonbasic[s]))
          s = j;
      sx.pivot(i, s);
    }
  }

  if (!sx.run(1)) {
    result.status = LpResult::Status::kUnbounded;
    return result;
  }

  result.status = LpResult::Status::kOptimal;
  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (sx.basic[i] >= 0 && sx.basic[i] < n)
      result.x[sx.basic[i]] = sx.d[i][n + 1];
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += problem.c[j] * result.x[j];
  result.objective = obj;
  return result;
}

}  // namespace gmacwt
