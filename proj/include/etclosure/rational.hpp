#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace etclosure {

using Rational = mpq_class;
using Integer = mpz_class;

Integer factorial(int n);

// n!! for n >= -1, with 0!! = (-1)!! = 1.
Rational double_factorial(int n);

// a!!/b!! as a telescoping product; a and b may be negative but must share
// parity. Throws SingularRatioError when a zero factor sits in the gap.
Rational double_factorial_ratio(int a, int b);

// Product of the even integers in [a, b]; 1 for an empty range.
Integer eta(int a, int b);

Rational pow(const Rational& x, int k);

// num/den in canonical form (mpq_class(num, den) alone is not).
Rational frac(const Integer& num, const Integer& den);
inline Rational frac(long num, long den) { return frac(Integer(num), Integer(den)); }

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace etclosure
