#include <doctest.h>

#include "etclosure/closure.hpp"
#include "etclosure/errors.hpp"
#include "etclosure/oracle.hpp"
#include "helpers.hpp"

using namespace etclosure;
using testing::q;

namespace {

RawTensor<Rational> to_fast(const oracle::ExactArray& a) {
  RawTensor<Rational> r(a.rank);
  for (std::size_t flat = 0; flat < a.comps.size(); ++flat) {
    const auto idx = oracle::digits(flat, a.rank);
    std::size_t pos = 0;
    for (int k = a.rank - 1; k >= 0; --k) pos = pos * 4 + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
    r.comps[pos] = a.comps[flat];
  }
  return r;
}

}  // namespace

TEST_CASE("config guard") {
  oracle::OracleConfig c;
  CHECK(c.max_rank == 6);
  CHECK_NOTHROW(c.validate());
  c.max_rank = 9;
  CHECK_THROWS_AS(c.validate(), DomainError);
  oracle::ExactArray big(9);
  CHECK_THROWS_AS(oracle::brute_symmetrize(big), DomainError);
}

TEST_CASE("brute symmetrization agrees with the canonical one") {
  oracle::Generator g(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 6;
    const auto raw = g.raw_array<Rational>(n);
    CHECK(oracle::equal_exact(oracle::brute_symmetrize(raw), symmetrize(to_fast(raw))));
  }
  const auto sym = oracle::brute_symmetrize(g.raw_array<Rational>(3));
  CHECK(oracle::brute_symmetrize(sym).comps == sym.comps);
  oracle::ExactArray scalar(0);
  scalar.comps[0] = q(5, 2);
  CHECK(oracle::brute_symmetrize(scalar).comps[0] == q(5, 2));
}

TEST_CASE("brute traces and contractions") {
  const ExactVec4 mu = ExactVec4::upper(q(5, 4), q(1, 2), 0, q(-1, 4));
  CHECK(oracle::equal_exact(oracle::brute_trace(oracle::brute_basis(4, 2, mu)), metric_tensor<Rational>() * Rational(2)));
  oracle::Generator g(7);
  for (int n = 2; n <= 5; ++n) {
    const auto raw = oracle::brute_symmetrize(g.raw_array<Rational>(n));
    const auto fast = symmetrize(to_fast(raw));
    CHECK(oracle::equal_exact(oracle::brute_trace(raw), trace_pair(fast)));
    CHECK(oracle::equal_exact(oracle::brute_mu_contract(raw, mu), contract_mu(fast, mu)));
  }
}

TEST_CASE("contraction table of the metric products") {
  oracle::Generator g(31);
  const ExactPoint p = g.exact_point();
  const PolynomialRegistry none;
  for (int n : {2, 4, 6}) {
    auto brute = oracle::brute_basis(n, n / 2, p.mu);
    for (int r = 0; r <= n; ++r) {
      if (r > 0) brute = oracle::brute_mu_contract(brute, p.mu);
      CHECK(oracle::equal_exact(brute, realize_exact(basis_mu_contraction(n, r), p, none)));
    }
  }
  // one contraction drops a metric for a mu
  for (int n : {4, 6}) {
    const auto lhs = oracle::brute_mu_contract(oracle::brute_basis(n, n / 2, p.mu), p.mu);
    CHECK(lhs.comps == oracle::brute_basis(n - 1, n / 2 - 1, p.mu).comps);
  }
}

TEST_CASE("finite-difference derivative oracle") {
  const auto reg = ClosureSpec().functions();
  const ThermoState st(0.1, Vec4::upper(1.3, 0.2, -0.3, 0.1), 1.0);
  FFamilyElement mu(1);
  mu.phi(0) = ScalarExpr(Rational(1));
  const auto fd = oracle::fd_mu_derivative(mu, st, *reg, 1e-4, false);
  CHECK(oracle::max_abs_diff(fd, to_double(metric_tensor<Rational>())) <= 1e-10);

  const ScalarExpr H = ScalarExpr::gamma_power(-4);
  FFamilyElement z1(1);
  z1.phi(0) = H;
  const auto exact = realize(mu_derivative(z1), st, *reg);
  const auto plain = oracle::fd_mu_derivative(z1, st, *reg, 1e-4, false);
  CHECK(oracle::max_abs_diff(plain, exact) <= 1e-6 * max_abs(exact));

  ClosureSpec s;
  const FFamilyElement c10 = build_closure_tensor(s, 1, 0);
  const auto ex = realize(mu_derivative(c10), st, *reg);
  CHECK(oracle::max_abs_diff(oracle::fd_mu_derivative(c10, st, *reg, 1e-4, false), ex) <= 1e-6 * max_abs(ex));
  CHECK(oracle::max_abs_diff(oracle::fd_mu_derivative(c10, st, *reg), ex) <= 1e-9 * max_abs(ex));
}

TEST_CASE("generator points are exact and timelike") {
  oracle::Generator g(77);
  for (int i = 0; i < 20; ++i) {
    const ExactPoint p = g.exact_point();
    CHECK(-p.mu.norm_sq() == p.gamma * p.gamma);
    CHECK(p.mu[0] > 0);
  }
  oracle::Generator a(5), b(5);
  CHECK(a.exact_point().mu.c == b.exact_point().mu.c);
}
