#pragma once
#include <cstdint>

#include "afss/bits.hpp"

namespace afss {

// Arithmetic in GF(2^u) for small u, with a fixed published irreducible
// polynomial per degree. Elements are u-bit values, bit i = coefficient
// of x^i.
class Gf2m {
 public:
  explicit Gf2m(int u);

  int degree() const { return u_; }
  std::uint32_t modulus() const { return poly_; }
  std::uint32_t order() const { return std::uint32_t(1) << u_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow(std::uint32_t a, unsigned e) const;

  // Bits [pos, pos+u) of s as a field element, and back.
  std::uint32_t element_at(const BitString& s, int pos) const;
  void store_at(BitString& s, int pos, std::uint32_t v) const;

 private:
  int u_;
  std::uint32_t poly_;  // with bit u set
};

}  // namespace afss
