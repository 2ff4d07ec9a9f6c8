#include "etclosure/rational.hpp"

#include <string>

#include "etclosure/errors.hpp"

namespace etclosure {

Integer factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer " + std::to_string(n));
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rational double_factorial(int n) {
  if (n < -1) {
    throw DomainError("double_factorial(" + std::to_string(n) +
                      ") undefined; use double_factorial_ratio");
  }
  Integer r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return Rational(r);
}

Rational double_factorial_ratio(int a, int b) {
  if (((a - b) % 2) != 0) {
    throw DomainError("double_factorial_ratio: arguments differ in parity");
  }
  if (a == b) return Rational(1);
  Integer prod = 1;
  const int hi = a > b ? a : b;
  const int lo = a > b ? b : a;
  for (int k = hi; k > lo; k -= 2) {
    if (k == 0) {
      throw SingularRatioError("double_factorial_ratio(" + std::to_string(a) + ", " +
                               std::to_string(b) + "): zero factor");
    }
    prod *= k;
  }
  if (a > b) return Rational(prod);
  return frac(Integer(1), prod);
}

Integer eta(int a, int b) {
  Integer prod = 1;
  if (a > b) return prod;
  int e = (a % 2 == 0) ? a : a + 1;
  for (; e <= b; e += 2) prod *= e;
  return prod;
}

Rational pow(const Rational& x, int k) {
  Rational base = x;
  if (k < 0) {
    if (x == 0) throw DomainError("pow: zero to a negative power");
    base = 1 / x;
    k = -k;
  }
  Rational r = 1;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(k));
  r.canonicalize();
  return r;
}

Rational frac(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw DomainError("not a rational number: '" + s + "'");
  }
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace etclosure
