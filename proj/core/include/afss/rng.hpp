#pragma once
#include <cstdint>
#include <string_view>

#include "afss/bits.hpp"

namespace afss {

// Splittable deterministic generator (splitmix64 streams). Every piece of
// randomness in the artifact flows through one of these, seeded from the
// manifest, so runs replay bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Unbiased value in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  BitString bits(int len);

  bool coin() { return next() & 1; }

  // Independent child stream; deterministic in (parent seed, label).
  Rng split(std::string_view label) const;
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace afss
