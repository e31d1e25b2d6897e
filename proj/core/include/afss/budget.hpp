#pragma once
#include <cstdint>

#include "afss/errors.hpp"

namespace afss {

// One global knob for every exhaustive operation. Costs are declared up
// front; an operation that cannot afford its enumeration refuses instead
// of silently sampling.
struct Budget {
  std::uint64_t max_evals = std::uint64_t(1) << 22;
  mutable std::uint64_t used = 0;

  void charge(std::uint64_t cost) const {
    if (used + cost > max_evals) throw BudgetExceeded("enumeration budget exceeded");
    used += cost;
  }

  static Budget with(std::uint64_t max) {
    Budget b;
    b.max_evals = max;
    return b;
  }
};

}  // namespace afss
