#pragma once
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace afss {

// Immutable-ish bit vector over GF(2), packed into 64-bit words.
// operator+ is bitwise XOR of equal-length strings.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int len) : len_(len), words_((len + 63) / 64, 0) {}

  static BitString zeros(int len) { return BitString(len); }
  static BitString ones(int len);
  // Low `len` bits of `value`, bit i of the string = bit i of value.
  static BitString from_u64(std::uint64_t value, int len);
  // "0101..." (index 0 first).
  static BitString from_string(const std::string& s);
  static BitString from_hex(const std::string& hex, int len);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(int i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  std::uint64_t as_u64() const;  // requires size() <= 64

  BitString operator+(const BitString& other) const;  // XOR
  BitString& operator+=(const BitString& other);

  bool is_zero() const;
  int popcount() const;

  // Parity of AND with another string of the same length (inner product).
  bool dot(const BitString& other) const;

  BitString concat(const BitString& tail) const;
  BitString slice(int begin, int len) const;

  std::string to_string() const;
  std::string to_hex() const;

  auto operator<=>(const BitString& o) const {
    if (auto c = len_ <=> o.len_; c != 0) return c;
    return words_ <=> o.words_;
  }
  bool operator==(const BitString& o) const = default;

  std::uint64_t hash() const;

 private:
  void trim();
  int len_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace afss
