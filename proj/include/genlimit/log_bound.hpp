#pragma once

// Bounds of the form a + b * log2(q) with rational a, b >= 0 and q > 0,
// compared against integers without rounding.

#include <cstdint>
#include <string>

#include "genlimit/rational.hpp"

namespace genlimit {

struct LogBound {
  Rational constant = 0;
  Rational coefficient = 0;
  Rational argument = 1;

  // Exact test of k <= constant + coefficient * log2(argument).
  bool admits(std::int64_t k) const;
  // Largest integer admitted.
  std::int64_t floor() const;
  long double value() const;
  std::string to_string() const;
};

}  // namespace genlimit
