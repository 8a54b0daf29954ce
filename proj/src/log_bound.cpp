#include "genlimit/log_bound.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace genlimit {

namespace {

// 2^(u/v) <= q  <=>  2^u <= q^v  for v > 0.
bool two_to_ratio_at_most(const Rational& ratio, const Rational& q) {
  const BigInt u = numerator(ratio);
  const BigInt v = denominator(ratio);
  if (v > 4096) throw std::overflow_error("LogBound: exponent denominator too large");
  const Rational lhs = pow2(u.convert_to<std::int64_t>());
  return lhs <= pow(q, v.convert_to<std::uint64_t>());
}

}  // namespace

bool LogBound::admits(std::int64_t k) const {
  if (argument <= 0) throw std::invalid_argument("LogBound: log argument must be positive");
  const Rational slack = Rational(k) - constant;
  if (coefficient == 0) return slack <= 0;
  if (coefficient < 0) throw std::invalid_argument("LogBound: negative coefficient");
  return two_to_ratio_at_most(slack / coefficient, argument);
}

std::int64_t LogBound::floor() const {
  auto k = static_cast<std::int64_t>(std::floor(value()));
  while (!admits(k)) --k;
  while (admits(k + 1)) ++k;
  return k;
}

long double LogBound::value() const {
  return to_long_double(constant) + to_long_double(coefficient) * log2_approx(argument);
}

std::string LogBound::to_string() const {
  std::ostringstream out;
  out << genlimit::to_string(constant);
  if (coefficient != 0) out << " + " << genlimit::to_string(coefficient) << "*log2(" << genlimit::to_string(argument) << ")";
  return out.str();
}

}  // namespace genlimit
