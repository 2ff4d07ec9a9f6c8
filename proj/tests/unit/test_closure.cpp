#include <doctest.h>

#include <set>

#include "etclosure/closure.hpp"
#include "etclosure/errors.hpp"
#include "etclosure/serialize.hpp"
#include "helpers.hpp"

using namespace etclosure;
using testing::q;

namespace {

ClosureSpec spec(int M, int N, int h = 2, int k = 2) {
  ClosureSpec s;
  s.M = M;
  s.N = N;
  s.h_max = h;
  s.k_max = k;
  return s;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(spec(1, 1).validate(), DomainError);
  CHECK_THROWS_AS(spec(2, 2).validate(), DomainError);
  CHECK_THROWS_AS(spec(2, 1, -1).validate(), DomainError);
  CHECK_THROWS_AS(spec(8, 3, 2, 2).validate(), CapExceeded);
  CHECK_NOTHROW(spec(2, 3).validate());
  CHECK(spec(2, 1).orders().size() == 3);
}

TEST_CASE("N = 1 coefficients") {
  CHECK(closure_coeff_n1(2, 0, 0).is_zero());
  CHECK(closure_coeff_n1(2, 1, 1) == ScalarExpr::monomial(3, -6, 1, Symbol{0, 1}));
  CHECK(closure_coeff_n1(2, 1, 0) == ScalarExpr::monomial(6, -8, 1, Symbol{0, 1}));
  CHECK_THROWS_AS(closure_coeff_n1(2, 1, 2), DomainError);
  for (int h = 0; h <= 2; ++h) {
    for (int s = 0; s <= h; ++s) CHECK(closure_coeff(2, 1, h, 0, s) == closure_coeff_n1(2, h, s));
  }
}

TEST_CASE("general coefficients") {
  CHECK(closure_coeff(2, 3, 0, 1, 2) == ScalarExpr::monomial(3, -6, 1, Symbol{0, 0}));
  CHECK(closure_coeff(2, 3, 0, 0, 0).is_zero());
  CHECK_THROWS(closure_coeff(2, 3, 0, 1, 3));
}

TEST_CASE("closure tensors") {
  const ClosureSpec s21 = spec(2, 1);
  CHECK(build_closure_tensor(s21, 0, 0).is_zero());
  const FFamilyElement c10 = build_closure_tensor(s21, 1, 0);
  CHECK(c10.rank() == 3);
  CHECK(c10.phi(1) == closure_coeff_n1(2, 1, 1));
  CHECK(c10.phi(0) == closure_coeff_n1(2, 1, 0));
  for (const auto& [M, N] : std::vector<std::pair<int, int>>{{2, 1}, {4, 1}, {2, 3}}) {
    const ClosureTensorSet set = build_closure_set(spec(M, N, 1, 1));
    for (const auto& [o, f] : set.tensors) CHECK(check_characteristic(f).ok);
  }
}

TEST_CASE("recursive route") {
  const ClosureSpec s = spec(2, 3);
  CHECK(recursive_E(s, 0, 0).is_zero());
  CHECK(derive_C_from_E(s, 0, 1) == build_closure_tensor(s, 0, 1));
  CHECK(derive_C_from_E(s, 1, 1) == build_closure_tensor(s, 1, 1));
  CHECK(derive_C_from_E(s, 1, 0) == recursive_E(s, 1, 0));
  CHECK_THROWS(RecursiveClosure(spec(2, 1)));

  RecursiveClosure rc(s);
  for (int h = 0; h <= 2; ++h) {
    for (int k = 0; k <= 2; ++k) {
      CHECK(rc.E(h, k).leading() == E_leading_closed_form(2, 3, h, k));
      CHECK(rc.E(h, k) == rc.E_by_full_trace(h, k));
    }
  }
  // a single trace of E_{h,k+1} gives (-m^2) E_{h,k} when N = 3
  for (int h = 0; h <= 1; ++h) {
    for (int k = 0; k <= 1; ++k) CHECK(trace(rc.E(h, k + 1)) == rc.E(h, k).times_msq(1));
  }
  for (int k = 0; k <= 4; ++k) CHECK(rc.base_E(k).leading() == base_E_leading_closed_form(3, k));
}

TEST_CASE("N = 1 recursion") {
  const ClosureSpec s = spec(2, 1, 3, 0);
  for (int h = 0; h <= 3; ++h) CHECK(recursive_C_n1(s, h) == build_closure_tensor(s, h, 0));
}

TEST_CASE("compatibility") {
  const ClosureTensorSet set = build_closure_set(spec(2, 3, 2, 2));
  for (int h = 0; h <= 1; ++h) {
    for (int k = 0; k <= 1; ++k) {
      const auto rep = verify_compatibility(set, h, k);
      CHECK(rep.lambda_checked);
      CHECK(rep.mu_checked);
      CHECK(rep.ok());
    }
  }
  const ClosureTensorSet n1 = build_closure_set(spec(2, 1, 3, 0));
  for (int h = 0; h <= 2; ++h) CHECK(verify_compatibility(n1, h, 0).ok());
}

TEST_CASE("tensors with equal k + M h draw on the same c_q") {
  const ClosureSpec s = spec(2, 3, 2, 2);
  // (h,k)=(1,0) and (0,2) share k + Mh = 2
  auto syms = [](const FFamilyElement& f) {
    std::set<int> out;
    for (const auto& phi : f.coeffs()) {
      for (const auto& [key, c] : phi.terms()) {
        if (key.sym) out.insert(key.sym->q);
      }
    }
    return out;
  };
  // q runs to (Mh + (N-1)k - 2)/2, so the lower-rank tensor uses a prefix of the same c_q
  CHECK(syms(build_closure_tensor(s, 1, 0)) == std::set<int>{0});
  CHECK(syms(build_closure_tensor(s, 0, 2)) == std::set<int>{0, 1});
}

TEST_CASE("mutation breaks the characteristic condition") {
  ClosureTensorSet set = build_closure_set(spec(2, 1));
  mutate_closure_set(set, 1);
  bool broken = false;
  for (const auto& [o, f] : set.tensors) broken = broken || !check_characteristic(f).ok;
  CHECK(broken);
}

TEST_CASE("closure table rows") {
  const auto rows = closure_rows(build_closure_set(spec(2, 1, 1, 0)));
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].s.has_value());
  CHECK(rows[0].prefactor == 0);
  CHECK(rows[1].s == 0);
  CHECK(rows[1].q == 0);
  CHECK(rows[1].prefactor == 6);
  CHECK(rows[2].s == 1);
  CHECK(rows[2].prefactor == 3);
  CHECK(rows_from_csv(rows_to_csv(rows)) == rows);
  CHECK(rows_from_json(rows_to_json(rows)) == rows);
}
