#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ppwalk {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical "num/den" form; the denominator is always written, even when 1.
std::string to_string(const Rational& x);

// Accepts "a", "a/b" and surrounding whitespace. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

// p^e as an exact rational; negative exponents allowed.
Rational rational_pow(unsigned long p, long e);

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

}  // namespace ppwalk
