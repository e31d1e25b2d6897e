#pragma once
#include <optional>
#include <vector>

#include "afss/rational.hpp"

namespace afss {

// Small dense exact-rational LP:
//   minimize c . x   subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
// Two-phase simplex with Bland's rule; sizes here are a few dozen
// variables at most.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> eq_lhs;
  std::vector<Rational> eq_rhs;
  std::vector<std::vector<Rational>> ub_lhs;
  std::vector<Rational> ub_rhs;
};

struct LpSolution {
  std::vector<Rational> x;
  Rational value;
};

// Empty optional iff infeasible (unbounded throws; callers only pose
// bounded programs).
std::optional<LpSolution> solve_lp(const LinearProgram& lp);

}  // namespace afss
