#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace afss {

// Exact probabilities everywhere on verification paths; no floating
// point ever enters a certified value.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }

// 2^-e as an exact rational.
inline Rational pow2_inv(unsigned e) {
  BigInt d = 1;
  d <<= e;
  return Rational(1, d);
}

inline Rational pow2(unsigned e) {
  BigInt n = 1;
  n <<= e;
  return Rational(n, 1);
}

inline std::string rational_str(const Rational& r) { return r.str(); }

inline Rational rational_from_str(const std::string& s) { return Rational(s); }

inline double rational_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace afss
