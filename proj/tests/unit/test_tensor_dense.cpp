#include <doctest.h>

#include "etclosure/f_family.hpp"
#include "etclosure/oracle.hpp"
#include "etclosure/serialize.hpp"
#include "etclosure/tensor_dense.hpp"
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

const ExactVec4 kMu = ExactVec4::upper(q(5, 3), q(1, 3), q(-2, 3), q(1, 2));

}  // namespace

TEST_CASE("metric") {
  const auto g = metric_tensor<Rational>();
  CHECK(trace_pair(g)[0] == 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      // g^{ac} g_{cb} with the same diagonal entries
      Rational s = 0;
      for (int c = 0; c < 4; ++c) s += g({a, c}) * g({c, b});
      CHECK(s == (a == b ? 1 : 0));
    }
  }
  CHECK(MultiIndexTable::get(3).size() == 20);
  CHECK(MultiIndexTable::get(6).size() == 84);
}

TEST_CASE("symmetrize") {
  RawTensor<Rational> t(2);
  t.comps[1] = 1;  // T^{10} in the fast layout
  const auto s = symmetrize(t);
  CHECK(s({0, 1}) == q(1, 2));
  CHECK(s({1, 0}) == q(1, 2));
  CHECK(s({0, 0}) == 0);

  RawTensor<Rational> scalar(0);
  scalar.comps[0] = q(7, 3);
  CHECK(symmetrize(scalar)[0] == q(7, 3));

  oracle::Generator g(3);
  for (int n = 1; n <= 5; ++n) {
    const auto raw = g.raw_array<Rational>(n);
    const auto once = symmetrize(to_fast(raw));
    const auto twice = symmetrize(to_fast(oracle::from_symmetric(once)));
    CHECK(once == twice);
  }
}

TEST_CASE("g-mu basis") {
  const ExactVec4 rest = ExactVec4::upper(1, 0, 0, 0);
  const auto y1 = gmu_basis(1, 0, kMu);
  for (int a = 0; a < 4; ++a) CHECK(y1({a}) == kMu[a]);
  CHECK(gmu_basis(2, 1, kMu) == metric_tensor<Rational>());
  CHECK(gmu_basis(4, 1, rest)({0, 0, 0, 0}) == -1);
  CHECK_THROWS_AS(gmu_basis(4, 3, kMu), DomainError);
}

TEST_CASE("traces") {
  const Rational gamma_sq = -kMu.norm_sq();
  CHECK(trace_pair(metric_tensor<Rational>())[0] == 4);
  CHECK(trace_pair(gmu_basis(2, 0, kMu))[0] == -gamma_sq);
  CHECK(trace_pair(gmu_basis(4, 2, kMu)) == metric_tensor<Rational>() * Rational(2));
  CHECK_THROWS_AS(trace_pair(vector_tensor(kMu)), DomainError);
}

TEST_CASE("mu contractions") {
  const Rational gamma_sq = -kMu.norm_sq();
  const ExactVec4 low = kMu.lowered();
  CHECK(contract_mu(vector_tensor(kMu), low)[0] == -gamma_sq);
  CHECK(contract_mu(metric_tensor<Rational>(), low) == vector_tensor(kMu));
  const auto two = contract_mu(contract_mu(gmu_basis(4, 2, kMu), low), low);
  const auto expect = (metric_tensor<Rational>() * (-gamma_sq) + gmu_basis(2, 0, kMu) * Rational(2)) * q(1, 3);
  CHECK(two == expect);
}

TEST_CASE("trace of the basis follows the coefficient recombination") {
  // realize_exact needs a point with rational gamma
  oracle::Generator g(5);
  const ExactPoint pt = g.exact_point();
  const PolynomialRegistry reg;
  for (int n = 2; n <= 6; ++n) {
    for (int s = 0; 2 * s <= n; ++s) {
      FFamilyElement y(n);
      y.phi(s) = ScalarExpr(Rational(1));
      CHECK(trace_pair(gmu_basis(n, s, pt.mu)) == realize_exact(trace(y), pt, reg));
    }
  }
}

TEST_CASE("permuted lookups hit the canonical entry") {
  oracle::Generator g(9);
  const auto raw = g.raw_array<Rational>(4);
  const auto s = symmetrize(to_fast(raw));
  std::vector<int> idx = {3, 1, 0, 1};
  std::sort(idx.begin(), idx.end());
  const Rational v = s(std::span<const int>(idx));
  do {
    CHECK(s(std::span<const int>(idx)) == v);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("tensor json export") {
  const auto g = to_double(metric_tensor<Rational>());
  const Json j = to_json(g);
  CHECK(j["rank"] == 2);
  CHECK(j["components"].size() == 10);
  CHECK(j["components"][0]["idx"] == Json::array({0, 0}));
  CHECK(j["components"][0]["value"] == -1.0);
  CHECK(tensor_from_json(j) == g);
}
