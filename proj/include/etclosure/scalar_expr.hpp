#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etclosure/function_registry.hpp"
#include "etclosure/rational.hpp"

namespace etclosure {

// d^order c_q / d lambda^order
struct Symbol {
  int q = 0;
  int order = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct TermKey {
  int gamma_pow = 0;
  int msq_pow = 0;  // power of (-m^2)
  std::optional<Symbol> sym;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& a, const TermKey& b);
};

struct Term {
  Rational coeff;
  TermKey key;
};

// Finite sum of coeff * gamma^p * (-m^2)^j * [d^h c_q], kept merged and
// free of zero coefficients, so == is exact equality.
class ScalarExpr {
 public:
  ScalarExpr() = default;
  explicit ScalarExpr(const Rational& c);

  static ScalarExpr monomial(const Rational& coeff, int gamma_pow, int msq_pow = 0,
                             std::optional<Symbol> sym = std::nullopt);
  static ScalarExpr symbol(int q, int order = 0);
  static ScalarExpr gamma_power(int p) { return monomial(1, p); }
  static ScalarExpr msq_power(int j) { return monomial(1, 0, j); }

  bool is_zero() const { return terms_.empty(); }
  bool has_symbols() const;
  std::size_t size() const { return terms_.size(); }
  const std::map<TermKey, Rational>& terms() const { return terms_; }
  std::vector<Term> term_list() const;

  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const Rational& c);
  ScalarExpr operator-() const;

  // Throws DomainError if both factors carry c_q symbols.
  ScalarExpr operator*(const ScalarExpr& o) const;

  ScalarExpr times_gamma(int k) const;
  ScalarExpr times_msq(int j) const;

  ScalarExpr d_gamma() const;
  // d/d(gamma^2) = (1/(2 gamma)) d/d gamma
  ScalarExpr d_gamma_sq() const;
  // Only the c_q symbols depend on lambda.
  ScalarExpr d_lambda(int times = 1) const;
  // Term-wise gamma antiderivative; gamma^-1 has no monomial antiderivative.
  ScalarExpr integrate_gamma() const;

  friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

  std::string to_string() const;

 private:
  void add_term(const TermKey& key, const Rational& c);
  std::map<TermKey, Rational> terms_;
};

inline ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
inline ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
inline ScalarExpr operator*(ScalarExpr a, const Rational& c) { return a *= c; }
inline ScalarExpr operator*(const Rational& c, ScalarExpr a) { return a *= c; }
inline ScalarExpr operator*(ScalarExpr a, int c) { return a *= Rational(c); }
inline ScalarExpr operator*(int c, ScalarExpr a) { return a *= Rational(c); }

struct EvalPoint {
  double lambda = 0.0;
  double gamma = 1.0;
  double mass = 1.0;
};

double evaluate(const ScalarExpr& e, const EvalPoint& at, const FunctionRegistry& reg);

Rational evaluate_exact(const ScalarExpr& e, const Rational& lambda, const Rational& gamma,
                        const Rational& mass_sq, const PolynomialRegistry& reg);

}  // namespace etclosure
