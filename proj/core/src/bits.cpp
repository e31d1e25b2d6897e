#include "afss/bits.hpp"

#include <bit>
#include <cctype>

#include "afss/errors.hpp"

namespace afss {

void BitString::trim() {
  if (len_ & 63) {
    std::uint64_t mask = (std::uint64_t(1) << (len_ & 63)) - 1;
    if (!words_.empty()) words_.back() &= mask;
  }
}

BitString BitString::ones(int len) {
  BitString b(len);
  for (auto& w : b.words_) w = ~std::uint64_t(0);
  b.trim();
  return b;
}

BitString BitString::from_u64(std::uint64_t value, int len) {
  if (len < 0 || len > 64) throw DimensionError("from_u64: len out of range");
  BitString b(len);
  if (len > 0) b.words_[0] = value;
  b.trim();
  return b;
}

BitString BitString::from_string(const std::string& s) {
  BitString b(static_cast<int>(s.size()));
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    if (s[i] == '1')
      b.set(i, true);
    else if (s[i] != '0')
      throw DimensionError("from_string: expected only 0/1");
  }
  return b;
}

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(c));
  if (c >= 'a' && c <= 'f') return 10 + c - 'a';
  throw DimensionError("from_hex: bad hex digit");
}

BitString BitString::from_hex(const std::string& hex, int len) {
  if (static_cast<int>(hex.size()) * 4 < len)
    throw DimensionError("from_hex: string too short for requested length");
  BitString b(len);
  for (int i = 0; i < len; ++i) {
    int nibble = hex_val(hex[i / 4]);
    if ((nibble >> (i % 4)) & 1) b.set(i, true);
  }
  return b;
}

std::uint64_t BitString::as_u64() const {
  if (len_ > 64) throw DimensionError("as_u64: string longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

BitString BitString::operator+(const BitString& other) const {
  BitString r = *this;
  r += other;
  return r;
}

BitString& BitString::operator+=(const BitString& other) {
  if (len_ != other.len_) throw DimensionError("xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitString::is_zero() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

int BitString::popcount() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool BitString::dot(const BitString& other) const {
  if (len_ != other.len_) throw DimensionError("dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

BitString BitString::concat(const BitString& tail) const {
  BitString r(len_ + tail.len_);
  for (int i = 0; i < len_; ++i)
    if (get(i)) r.set(i, true);
  for (int i = 0; i < tail.len_; ++i)
    if (tail.get(i)) r.set(len_ + i, true);
  return r;
}

BitString BitString::slice(int begin, int len) const {
  if (begin < 0 || len < 0 || begin + len > len_) throw DimensionError("slice: out of range");
  BitString r(len);
  for (int i = 0; i < len; ++i)
    if (get(begin + i)) r.set(i, true);
  return r;
}

std::string BitString::to_string() const {
  std::string s(len_, '0');
  for (int i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s((len_ + 3) / 4, '0');
  for (int i = 0; i < len_; ++i)
    if (get(i)) {
      int d = hex_val(s[i / 4]) | (1 << (i % 4));
      s[i / 4] = digits[d];
    }
  return s;
}

std::uint64_t BitString::hash() const {
  std::uint64_t h = 14695981039346656037ull ^ static_cast<std::uint64_t>(len_);
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace afss
