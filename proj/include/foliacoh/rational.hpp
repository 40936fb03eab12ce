#ifndef FOLIACOH_RATIONAL_HPP
#define FOLIACOH_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace foliacoh {

/// Arbitrary-precision rational. Every number the engine touches is one of these.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

}  // namespace foliacoh

#endif  // FOLIACOH_RATIONAL_HPP
