#pragma once

#include "ppwalk/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ppwalk::poly {

// Dense univariate polynomial over Q, coefficients low degree first.
// The zero polynomial is the empty vector.
using Polynomial = std::vector<Rational>;

void normalize(Polynomial& f);
long degree(const Polynomial& f);  // -1 for zero
Rational eval(const Polynomial& f, const Rational& x);
Polynomial derivative(const Polynomial& f);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
// Euclidean division; throws InvalidArgument when b is zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Rational roots with multiplicity, ascending by value.
std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& f);

// "X^2 - 216X + 32768" style rendering, variable X.
std::string to_string(const Polynomial& f);

}  // namespace ppwalk::poly
