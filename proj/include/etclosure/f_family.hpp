#pragma once

#include <string>
#include <vector>

#include "etclosure/function_registry.hpp"
#include "etclosure/scalar_expr.hpp"
#include "etclosure/state.hpp"
#include "etclosure/tensor_dense.hpp"

namespace etclosure {

// sum_s phi_s Y^n_s; Y^n_s has s metrics and n-2s copies of mu^a.
class FFamilyElement {
 public:
  FFamilyElement() : FFamilyElement(0) {}
  explicit FFamilyElement(int rank);
  FFamilyElement(int rank, std::vector<ScalarExpr> phi);

  // Lower coefficients regenerated from the leading one.
  static FFamilyElement from_leading(int rank, const ScalarExpr& leading);

  int rank() const { return rank_; }
  int top() const { return rank_ / 2; }
  const ScalarExpr& phi(int s) const;
  ScalarExpr& phi(int s);
  const std::vector<ScalarExpr>& coeffs() const { return phi_; }
  const ScalarExpr& leading() const { return phi_.back(); }
  bool is_zero() const;

  FFamilyElement& operator+=(const FFamilyElement& o);
  FFamilyElement& operator-=(const FFamilyElement& o);
  FFamilyElement& operator*=(const Rational& c);
  FFamilyElement times(const ScalarExpr& factor) const;
  FFamilyElement times_msq(int j) const;
  FFamilyElement d_lambda(int times = 1) const;

  friend bool operator==(const FFamilyElement&, const FFamilyElement&) = default;
  friend FFamilyElement operator+(FFamilyElement a, const FFamilyElement& b) { return a += b; }
  friend FFamilyElement operator-(FFamilyElement a, const FFamilyElement& b) { return a -= b; }

  std::string to_string() const;

 private:
  int rank_;
  std::vector<ScalarExpr> phi_;
};

struct CharacteristicReport {
  bool ok = true;
  std::vector<ScalarExpr> residuals;  // entry s-1 for s = 1..top
};

CharacteristicReport check_characteristic(const FFamilyElement& f);

// d/d mu_b, appended as the last slot. Throws CharacteristicViolation.
FFamilyElement mu_derivative(const FFamilyElement& f);
FFamilyElement mu_derivative(const FFamilyElement& f, int times);

// Contraction of the last two slots with g.
FFamilyElement trace(const FFamilyElement& f);
FFamilyElement trace(const FFamilyElement& f, int times);

// Rank n+2r element whose r-fold trace is f; free[i] (gamma independent)
// multiplies the i-th kernel direction.
FFamilyElement lift(const FFamilyElement& f, int r, const std::vector<ScalarExpr>& free);

// Leading coefficient of the r-fold trace, for leading terms built from
// monomials f(lambda) gamma^{-2(3+p)}, p >= 0.
ScalarExpr leading_after_traces(const FFamilyElement& f, int r);

// Coefficients of Y^n_{n/2} contracted r times with mu_a, as a rank n-r
// element (n even).
FFamilyElement basis_mu_contraction(int n, int r);

DenseSymTensor realize(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg);
ExactSymTensor realize_exact(const FFamilyElement& f, const ExactPoint& at, const PolynomialRegistry& reg);

}  // namespace etclosure
