#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace genlimit {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction with a positive denominator; arbitrary precision.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// Parses "p", "p/q" (e.g. "3/4"). Throws std::invalid_argument on garbage.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

// floor(log2(r)) for r > 0, computed exactly from bit lengths.
std::int64_t floor_log2(const Rational& r);

// 2^k as an exact rational, k may be negative.
Rational pow2(std::int64_t k);

Rational pow(const Rational& base, std::uint64_t exponent);

long double to_long_double(const Rational& r);

// log2(r) for display only; never used in a comparison.
long double log2_approx(const Rational& r);

}  // namespace genlimit
