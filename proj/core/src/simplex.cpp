#include "afss/simplex.hpp"

#include "afss/errors.hpp"

namespace afss {

namespace {

// Dense tableau with rows = constraints, one objective row at the end.
struct Tableau {
  int m, n;  // constraints, structural+slack+artificial columns
  std::vector<std::vector<Rational>> a;  // m x (n+1), last column = rhs
  std::vector<Rational> obj;             // n+1, reduced costs + objective value
  std::vector<int> basis;                // basis[i] = column basic in row i

  void pivot(int row, int col) {
    Rational inv = a[row][col];
    for (auto& v : a[row]) v /= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int c = 0; c <= n; ++c) a[r][c] -= f * a[row][c];
    }
    if (obj[col] != 0) {
      Rational f = obj[col];
      for (int c = 0; c <= n; ++c) obj[c] -= f * a[row][c];
    }
    basis[row] = col;
  }

  // Bland's rule; returns false when optimal.
  bool step() {
    int col = -1;
    for (int c = 0; c < n; ++c)
      if (obj[c] < 0) {
        col = c;
        break;
      }
    if (col < 0) return false;
    int row = -1;
    for (int r = 0; r < m; ++r) {
      if (a[r][col] <= 0) continue;
      if (row < 0) {
        row = r;
        continue;
      }
      Rational lhs = a[r][n] * a[row][col];
      Rational rhs = a[row][n] * a[r][col];
      if (lhs < rhs || (lhs == rhs && basis[r] < basis[row])) row = r;
    }
    if (row < 0) throw Error("simplex: unbounded program");
    pivot(row, col);
    return true;
  }

  void run() {
    while (step()) {
    }
  }
};

}  // namespace

std::optional<LpSolution> solve_lp(const LinearProgram& lp) {
  const int nv = static_cast<int>(lp.objective.size());
  const int me = static_cast<int>(lp.eq_lhs.size());
  const int mu = static_cast<int>(lp.ub_lhs.size());
  const int m = me + mu;

  // columns: structural | slack (ub rows) | artificial (all rows)
  const int n_slack = mu;
  const int n_art = m;
  const int n = nv + n_slack + n_art;

  Tableau t;
  t.m = m;
  t.n = n;
  t.a.assign(m, std::vector<Rational>(n + 1, 0));
  t.basis.assign(m, -1);

  for (int r = 0; r < me; ++r) {
    for (int c = 0; c < nv; ++c) t.a[r][c] = lp.eq_lhs[r][c];
    t.a[r][n] = lp.eq_rhs[r];
  }
  for (int r = 0; r < mu; ++r) {
    for (int c = 0; c < nv; ++c) t.a[me + r][c] = lp.ub_lhs[r][c];
    t.a[me + r][nv + r] = 1;  // slack
    t.a[me + r][n] = lp.ub_rhs[r];
  }
  // rhs >= 0
  for (int r = 0; r < m; ++r)
    if (t.a[r][n] < 0)
      for (int c = 0; c <= n; ++c) t.a[r][c] = -t.a[r][c];
  // artificial basis
  for (int r = 0; r < m; ++r) {
    t.a[r][nv + n_slack + r] = 1;
    t.basis[r] = nv + n_slack + r;
  }

  // Phase 1: minimize sum of artificials.
  t.obj.assign(n + 1, 0);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= n; ++c)
      if (c < nv + n_slack || c == n) t.obj[c] -= t.a[r][c];
  t.run();
  if (-t.obj[n] != 0) return std::nullopt;  // infeasible

  // Drive leftover artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < nv + n_slack) continue;
    int col = -1;
    for (int c = 0; c < nv + n_slack; ++c)
      if (t.a[r][c] != 0) {
        col = c;
        break;
      }
    if (col >= 0) t.pivot(r, col);
    // else the row is redundant (all-zero); harmless to leave.
  }

  // Phase 2: original objective, artificial columns frozen.
  t.obj.assign(n + 1, 0);
  for (int c = 0; c < nv; ++c) t.obj[c] = lp.objective[c];
  for (int r = 0; r < m; ++r) {
    int b = t.basis[r];
    if (b < nv && t.obj[b] != 0) {
      Rational f = t.obj[b];
      for (int c = 0; c <= n; ++c) t.obj[c] -= f * t.a[r][c];
    }
  }
  // forbid re-entering artificials: clear both their columns and their
  // reduced costs (basic ones already price to zero)
  for (int c = nv + n_slack; c < n; ++c) {
    bool basic = false;
    for (int r = 0; r < m; ++r) basic |= (t.basis[r] == c);
    if (!basic)
      for (int r = 0; r < m; ++r) t.a[r][c] = 0;
    t.obj[c] = 0;
  }
  t.run();

  LpSolution sol;
  sol.x.assign(nv, 0);
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < nv) sol.x[t.basis[r]] = t.a[r][n];
  sol.value = 0;
  for (int c = 0; c < nv; ++c) sol.value += lp.objective[c] * sol.x[c];
  return sol;
}

}  // namespace afss
