#include "afss/distribution.hpp"

#include "afss/errors.hpp"

namespace afss {

std::string outcome_str(const Outcome& o) {
  if (std::holds_alternative<Bot>(o)) return "BOT";
  if (std::holds_alternative<SameStar>(o)) return "same*";
  return std::get<BitString>(o).to_string();
}

FiniteDistribution FiniteDistribution::point(Outcome o) {
  FiniteDistribution d;
  d.support_[std::move(o)] = 1;
  return d;
}

FiniteDistribution FiniteDistribution::uniform_bits(int len) {
  FiniteDistribution d;
  Rational p = pow2_inv(len);
  for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v)
    d.support_[BitString::from_u64(v, len)] = p;
  return d;
}

FiniteDistribution FiniteDistribution::from_counts(
    const std::map<Outcome, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto& [o, c] : counts) total += c;
  if (total == 0) throw DimensionError("from_counts: empty");
  FiniteDistribution d;
  for (auto& [o, c] : counts)
    if (c) d.support_[o] = Rational(c, total);
  return d;
}

void FiniteDistribution::add_mass(const Outcome& o, const Rational& p) {
  auto it = support_.find(o);
  if (it == support_.end()) {
    if (p != 0) support_[o] = p;
  } else {
    it->second += p;
    if (it->second == 0) support_.erase(it);
  }
}

Rational FiniteDistribution::mass(const Outcome& o) const {
  auto it = support_.find(o);
  return it == support_.end() ? Rational(0) : it->second;
}

Rational FiniteDistribution::total() const {
  Rational t = 0;
  for (auto& [o, p] : support_) t += p;
  return t;
}

bool FiniteDistribution::is_distribution() const {
  for (auto& [o, p] : support_)
    if (p < 0) return false;
  return total() == 1;
}

Rational statistical_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
  Rational acc = 0;
  for (auto& [o, pp] : p.support()) {
    Rational diff = pp - q.mass(o);
    acc += diff < 0 ? -diff : diff;
  }
  for (auto& [o, qq] : q.support())
    if (p.mass(o) == 0) acc += qq;
  return acc / 2;
}

FiniteDistribution copy_dist(const FiniteDistribution& d, const BitString& s) {
  FiniteDistribution out;
  for (auto& [o, p] : d.support()) {
    if (std::holds_alternative<SameStar>(o))
      out.add_mass(Outcome(s), p);
    else
      out.add_mass(o, p);
  }
  return out;
}

}  // namespace afss
