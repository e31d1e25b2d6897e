#pragma once
#include <stdexcept>
#include <string>

namespace afss {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on sizes/lengths was violated by the caller.
struct DimensionError : Error {
  using Error::Error;
};

// An exhaustive operation refused to run because its declared cost
// exceeds the enumeration budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// extract(z,.) is not surjective for this seed; caller resamples z.
struct RankDeficientSeed : Error {
  using Error::Error;
};

// A scheme was configured outside the range its construction supports.
struct HypothesisViolation : Error {
  using Error::Error;
};

}  // namespace afss
