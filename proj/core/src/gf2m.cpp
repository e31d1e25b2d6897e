#include "afss/gf2m.hpp"

#include "afss/errors.hpp"

namespace afss {

// Low-weight irreducible polynomials, the usual table choices
// (x^8+x^4+x^3+x+1 is the AES modulus).
static const std::uint32_t kIrreducible[] = {
    0,      // unused
    0x3,    // u=1: x+1
    0x7,    // u=2: x^2+x+1
    0xb,    // u=3: x^3+x+1
    0x13,   // u=4: x^4+x+1
    0x25,   // u=5: x^5+x^2+1
    0x43,   // u=6: x^6+x+1
    0x89,   // u=7: x^7+x^3+1
    0x11b,  // u=8: x^8+x^4+x^3+x+1
    0x211,  // u=9
    0x409,  // u=10
    0x805,  // u=11
    0x1053, // u=12
};

Gf2m::Gf2m(int u) : u_(u) {
  if (u < 1 || u > 12) throw DimensionError("Gf2m: degree out of supported range");
  poly_ = kIrreducible[u];
}

std::uint32_t Gf2m::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t acc = 0;
  while (b) {
    if (b & 1) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (std::uint32_t(1) << u_)) a ^= poly_;
  }
  return acc;
}

std::uint32_t Gf2m::pow(std::uint32_t a, unsigned e) const {
  std::uint32_t acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

std::uint32_t Gf2m::element_at(const BitString& s, int pos) const {
  std::uint32_t v = 0;
  for (int i = 0; i < u_; ++i)
    if (s.get(pos + i)) v |= std::uint32_t(1) << i;
  return v;
}

void Gf2m::store_at(BitString& s, int pos, std::uint32_t v) const {
  for (int i = 0; i < u_; ++i) s.set(pos + i, (v >> i) & 1);
}

}  // namespace afss
