#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "afss/bits.hpp"
#include "afss/rational.hpp"

namespace afss {

// Sentinels alongside concrete bit strings: decode failure and the
// same-as-input marker used by the Copy operator.
struct Bot {
  auto operator<=>(const Bot&) const = default;
};
struct SameStar {
  auto operator<=>(const SameStar&) const = default;
};

using Outcome = std::variant<Bot, SameStar, BitString>;

std::string outcome_str(const Outcome& o);

// Exact finite distribution: rational masses summing to 1.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;

  static FiniteDistribution point(Outcome o);
  static FiniteDistribution uniform_bits(int len);
  static FiniteDistribution from_counts(const std::map<Outcome, std::uint64_t>& counts);

  void add_mass(const Outcome& o, const Rational& p);
  Rational mass(const Outcome& o) const;

  const std::map<Outcome, Rational>& support() const { return support_; }
  Rational total() const;
  bool is_distribution() const;  // nonneg masses, total exactly 1

  bool operator==(const FiniteDistribution& o) const = default;

 private:
  std::map<Outcome, Rational> support_;
};

// Half L1 distance, exact.
Rational statistical_distance(const FiniteDistribution& p, const FiniteDistribution& q);

// same* mass reassigned to s; everything else untouched.
FiniteDistribution copy_dist(const FiniteDistribution& d, const BitString& s);

}  // namespace afss
