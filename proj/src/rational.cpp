#include "genlimit/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace genlimit {

namespace {

BigInt parse_int(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("bad integer '" + text + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw std::invalid_argument("bad integer '" + text + "'");
    }
  }
  return BigInt(text);
}

// log2 of a positive integer, accurate to long double precision.
long double log2_int(const BigInt& v) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(v));
  if (bits < 60) return std::log2(static_cast<long double>(v.convert_to<std::uint64_t>()));
  const BigInt top = v >> (bits - 60);
  return std::log2(static_cast<long double>(top.convert_to<std::uint64_t>())) +
         static_cast<long double>(bits - 60);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

std::int64_t floor_log2(const Rational& r) {
  if (r <= 0) throw std::domain_error("floor_log2 of a non-positive rational");
  const BigInt& p = boost::multiprecision::numerator(r);
  const BigInt& q = boost::multiprecision::denominator(r);
  const auto k = static_cast<std::int64_t>(boost::multiprecision::msb(p)) -
                 static_cast<std::int64_t>(boost::multiprecision::msb(q));
  // 2^k <= p/q  <=>  q * 2^k <= p
  const bool fits = k >= 0 ? (q << static_cast<unsigned>(k)) <= p
                           : q <= (p << static_cast<unsigned>(-k));
  return fits ? k : k - 1;
}

Rational pow2(std::int64_t k) {
  if (k >= 0) return Rational(BigInt(1) << static_cast<unsigned>(k));
  return Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-k));
}

Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

long double to_long_double(const Rational& r) {
  if (r == 0) return 0.0L;
  const long double sign = r < 0 ? -1.0L : 1.0L;
  const Rational a = r < 0 ? Rational(-r) : r;
  return sign * std::exp2(log2_approx(a));
}

long double log2_approx(const Rational& r) {
  if (r <= 0) throw std::domain_error("log2 of a non-positive rational");
  return log2_int(boost::multiprecision::numerator(r)) -
         log2_int(boost::multiprecision::denominator(r));
}

}  // namespace genlimit
