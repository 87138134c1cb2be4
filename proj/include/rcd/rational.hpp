#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rcd {

using Rational = mpq_class;

// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or
// zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact power with a nonnegative integer exponent.
Rational pow(const Rational& base, unsigned exponent);

// Exact square root if r is the square of a rational.
bool exact_sqrt(const Rational& r, Rational& root);

}  // namespace rcd
