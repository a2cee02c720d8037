#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rum {

// Always canonical (lowest terms, positive denominator) after every
// arithmetic operation; see mpq_canonicalize.
using Rational = mpq_class;

/// Accepts "p/q" or an integer literal, with optional leading sign.
/// Decimal and exponent notation is rejected so that inputs stay exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// num/den in lowest terms; mpq_class(num, den) alone does not reduce.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace rum
