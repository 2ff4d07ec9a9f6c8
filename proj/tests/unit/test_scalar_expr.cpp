#include <doctest.h>

#include "etclosure/errors.hpp"
#include "etclosure/oracle.hpp"
#include "etclosure/scalar_expr.hpp"
#include "etclosure/serialize.hpp"
#include "helpers.hpp"

using namespace etclosure;
using testing::q;

TEST_CASE("double factorials") {
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(8) == 384);
  CHECK_THROWS_AS(double_factorial(-2), DomainError);
}

TEST_CASE("double factorial ratios telescope") {
  CHECK(double_factorial_ratio(6, 2) == 24);
  CHECK(double_factorial_ratio(-6, -4) == q(-1, 4));
  CHECK(double_factorial_ratio(0, 0) == 1);
  CHECK(double_factorial_ratio(2, 6) == q(1, 24));
  CHECK(double_factorial_ratio(7, 3) == 35);
  CHECK_THROWS_AS(double_factorial_ratio(-2, 2), SingularRatioError);
  CHECK_THROWS_AS(double_factorial_ratio(3, 2), DomainError);

  // agrees with the plain quotient where both sides exist
  for (int a = -1; a <= 11; ++a) {
    for (int b = a % 2 == 0 ? 0 : -1; b <= 11; b += 2) {
      if ((a - b) % 2 != 0) continue;
      CHECK(double_factorial_ratio(a, b) == double_factorial(a) / double_factorial(b));
    }
  }
  // chain rule r(a,b) r(b,c) = r(a,c) over negative and positive evens
  for (int a = -12; a <= 12; a += 2) {
    for (int b = -12; b <= 12; b += 2) {
      for (int c = -12; c <= 12; c += 2) {
        try {
          const Rational ab = double_factorial_ratio(a, b), bc = double_factorial_ratio(b, c);
          CHECK(ab * bc == double_factorial_ratio(a, c));
        } catch (const SingularRatioError&) {
        }
      }
    }
  }
}

TEST_CASE("eta") {
  CHECK(eta(2, 6) == 48);
  CHECK(eta(8, 6) == 1);
  CHECK(eta(0, 4) == 0);
  CHECK(eta(-4, -2) == 8);
  CHECK(eta(3, 3) == 1);
  for (int a = -9; a <= 9; ++a) {
    for (int b = a; b <= 10; ++b) {
      const bool has_zero = a <= 0 && 0 <= b;
      CHECK((eta(a, b) == 0) == has_zero);
      if (b % 2 == 0) CHECK(eta(a, b) == eta(a, b - 2) * b);
    }
  }
}

TEST_CASE("evaluation examples") {
  const auto reg = testing::identity_registry(2);
  const ScalarExpr e = ScalarExpr::monomial(3, -6, 1, Symbol{0, 1});
  CHECK(evaluate(e, {0.0, 1.0, 1.0}, reg) == doctest::Approx(-3.0));
  CHECK(evaluate(ScalarExpr(), {0.3, 2.0, 1.0}, reg) == 0.0);
  CHECK(evaluate(ScalarExpr::gamma_power(-2), {0.0, 2.0, 1.0}, reg) == doctest::Approx(0.25));
  CHECK_THROWS_AS(evaluate(ScalarExpr::symbol(5), {0.0, 1.0, 1.0}, reg), MissingSymbolError);
  CHECK_THROWS_AS(evaluate(e, {0.0, -1.0, 1.0}, reg), DomainError);
}

TEST_CASE("canonical form merges and drops zeros") {
  ScalarExpr a = ScalarExpr::monomial(q(1, 2), -4, 0, Symbol{1, 0});
  ScalarExpr b = ScalarExpr::monomial(q(1, 2), -4, 0, Symbol{1, 0});
  ScalarExpr s = a + b;
  CHECK(s.size() == 1);
  CHECK(s == ScalarExpr::monomial(1, -4, 0, Symbol{1, 0}));
  CHECK((s - a - b).is_zero());
  CHECK((s - a - b).size() == 0);
}

TEST_CASE("calculus on monomials") {
  const ScalarExpr e = ScalarExpr::monomial(2, -6, 1, Symbol{0, 1});
  CHECK(e.d_gamma() == ScalarExpr::monomial(-12, -7, 1, Symbol{0, 1}));
  CHECK(e.d_gamma_sq() == ScalarExpr::monomial(-6, -8, 1, Symbol{0, 1}));
  CHECK(e.d_lambda(2) == ScalarExpr::monomial(2, -6, 1, Symbol{0, 3}));
  CHECK(ScalarExpr::gamma_power(-4).d_lambda().is_zero());
  CHECK(ScalarExpr::gamma_power(-4).integrate_gamma() == ScalarExpr::monomial(q(-1, 3), -3));
  CHECK_THROWS(ScalarExpr::gamma_power(-1).integrate_gamma());
  CHECK_THROWS_AS(ScalarExpr::symbol(0) * ScalarExpr::symbol(1), DomainError);
}

TEST_CASE("canonical equality matches exact evaluation at random points") {
  oracle::Generator g(11);
  const PolynomialRegistry reg = g.polynomial_registry(3);
  std::uniform_int_distribution<int> gp(-8, 4), mp(0, 2), qd(0, 2), ord(0, 2), coin(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Term> terms;
    for (int i = 0; i < 4; ++i) {
      std::optional<Symbol> sym;
      if (coin(g.engine()) != 0) sym = Symbol{qd(g.engine()), ord(g.engine())};
      terms.push_back(Term{g.rational(5, 3), TermKey{gp(g.engine()), mp(g.engine()), sym}});
    }
    ScalarExpr e1, e2;
    for (const auto& t : terms) e1 += ScalarExpr::monomial(t.coeff, t.key.gamma_pow, t.key.msq_pow, t.key.sym);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      e2 += ScalarExpr::monomial(it->coeff, it->key.gamma_pow, it->key.msq_pow, it->key.sym);
    }
    const ScalarExpr e3 = e1 + ScalarExpr::monomial(q(1, 7), gp(g.engine()), 1, Symbol{0, 1});
    bool agree12 = true, agree13 = true;
    for (int p = 0; p < 5; ++p) {
      const ExactPoint at = g.exact_point();
      const Rational v1 = evaluate_exact(e1, at.lambda, at.gamma, at.mass_sq, reg);
      agree12 = agree12 && v1 == evaluate_exact(e2, at.lambda, at.gamma, at.mass_sq, reg);
      agree13 = agree13 && v1 == evaluate_exact(e3, at.lambda, at.gamma, at.mass_sq, reg);
    }
    CHECK(e1 == e2);
    CHECK(agree12);
    CHECK((e1 == e3) == agree13);
  }
}

TEST_CASE("json term list round trip") {
  const ScalarExpr e = ScalarExpr::monomial(q(-3, 4), -6, 1, Symbol{2, 1}) + ScalarExpr::gamma_power(2);
  const Json j = to_json(e);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  bool saw_sym = false;
  for (const auto& t : j) {
    if (!t["sym"].is_null()) {
      saw_sym = true;
      CHECK(t["coeff"] == "-3/4");
      CHECK(t["sym"] == Json::array({2, 1}));
    }
  }
  CHECK(saw_sym);
  CHECK(scalar_from_json(j) == e);
}
