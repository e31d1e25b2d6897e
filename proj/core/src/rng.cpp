#include "afss/rng.hpp"

namespace afss {

static std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::next() { return splitmix64(state_); }

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling to stay unbiased
  std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

BitString Rng::bits(int len) {
  BitString b(len);
  for (int i = 0; i < len; i += 64) {
    std::uint64_t w = next();
    for (int j = 0; j < 64 && i + j < len; ++j)
      if ((w >> j) & 1) b.set(i + j, true);
  }
  return b;
}

static std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Rng Rng::split(std::string_view label) const {
  std::uint64_t mixed = fnv1a(label, state_ ^ 14695981039346656037ull);
  return Rng(splitmix64(mixed));
}

Rng Rng::split(std::uint64_t index) const {
  std::uint64_t mixed = state_ ^ (0x9e3779b97f4a7c15ull * (index + 1));
  return Rng(splitmix64(mixed));
}

}  // namespace afss
