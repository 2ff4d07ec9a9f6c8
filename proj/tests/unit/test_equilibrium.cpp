#include <doctest.h>

#include <cmath>
#include <numbers>

#include "etclosure/equilibrium.hpp"
#include "etclosure/oracle.hpp"
#include "helpers.hpp"

using namespace etclosure;
using testing::q;

namespace {

// plain composite Simpson on [0, R] for int e^{-z cosh r} sinh^2 r dr
double simpson_kernel(double z) {
  const double R = std::acosh(1.0 + 60.0 / z);
  const int n = 20000;
  const double h = R / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double v = std::exp(-z * std::cosh(r)) * std::sinh(r) * std::sinh(r);
    s += v * (i == 0 || i == n ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("equilibrium multipliers") {
  const Rational msq = q(3, 2), lam = q(2, 7);
  const ExactVec4 mu = ExactVec4::lower(q(-5, 3), q(1, 3), 0, q(1, 2));
  CHECK(equilibrium_lambda(lam, 0, msq)[0] == lam);
  CHECK(equilibrium_lambda(lam, 2, msq) == metric_tensor<Rational>() * (lam / -msq));
  const auto n3 = equilibrium_mu(mu, 3, msq);
  CHECK(n3({0, 1, 1}) == mu[0] / 3 / -msq);
  CHECK(n3({0, 0, 0}) == -mu[0] / -msq);
  CHECK_THROWS_AS(equilibrium_lambda(lam, 3, msq), DomainError);
  CHECK_THROWS_AS(equilibrium_mu(mu, 2, msq), DomainError);
}

TEST_CASE("projection inverts the equilibrium form") {
  oracle::Generator g(1);
  for (int M : {0, 2, 4, 6}) {
    for (int N : {1, 3, 5}) {
      const ExactPoint p = g.exact_point();
      const auto [lam, mu] = equilibrium_multipliers(p.lambda, p.mu.lowered(), M, N, p.mass_sq);
      const auto [l2, m2] = project_equilibrium(lam, mu, p.mass_sq);
      if (M > 0) CHECK(l2 == p.lambda);
      CHECK(m2.c == p.mu.lowered().c);
    }
  }
}

TEST_CASE("potential from a distribution") {
  CHECK(H_from_distribution([](double, double) { return 0.0; }, 0.1, 1.0, 1.0) == 0.0);
  const double four_pi = 4.0 * std::numbers::pi;
  for (double z : {0.1, 1.0, 10.0}) {
    const double kernel = simpson_kernel(z);
    CHECK(testing::close(kernel, std::cyl_bessel_k(1.0, z) / z, 1e-10));
    const double lambda = 0.3, mass = 1.0, gamma = z;
    const double expect = four_pi / gamma * std::exp(-lambda) * kernel;
    const JuttnerDistribution mb;
    const double literal = H_from_distribution([&](double X, double Y) { return mb.F(X, Y); }, lambda, gamma, mass);
    CHECK(testing::close(literal, expect, 1e-9));
    const auto v = juttner_potential(mb, lambda, gamma, mass);
    CHECK(testing::close(v.H, expect, 1e-9));
    const auto c = maxwell_juttner_closed_form(lambda, gamma, mass);
    CHECK(testing::close(c.H, expect, 1e-9));
    CHECK(testing::close(v.H_lambda, c.H_lambda, 1e-9));
    CHECK(testing::close(v.H_gamma, c.H_gamma, 1e-9));
  }
  // only z = gamma m / k_B matters, up to the m^3 / gamma prefactor
  const auto a = maxwell_juttner_closed_form(0.2, 2.0, 0.5);
  const auto b = juttner_potential(JuttnerDistribution(), 0.2, 1.0, 1.0);
  CHECK(testing::close(a.H * 2.0 / 0.125, b.H * 1.0 / 1.0, 1e-9));
}

TEST_CASE("state functions") {
  const auto f = state_functions(2.0, 3.0, 0.0, 0.5, 2.0);
  CHECK(f.p == 2.0);
  CHECK(f.e == -2.0);
  CHECK(f.n == 6.0);
  CHECK(f.T == 0.5);
  CHECK(f.s == doctest::Approx(-0.5));
  CHECK_THROWS_AS(state_functions(1.0, 0.0, 1.0, 0.0, 1.0), DomainError);

  // quadrature state is positive in p and e for every statistics
  for (Statistics st : {Statistics::nondegenerate, Statistics::fermion, Statistics::boson}) {
    for (double z : {0.1, 1.0, 10.0}) {
      const auto v = juttner_potential(JuttnerDistribution(st), 0.4, z, 1.0);
      const auto sf = state_functions(v, 0.4, z);
      CHECK(sf.p > 0.0);
      CHECK(sf.e > 0.0);
      CHECK(std::isfinite(sf.n));
    }
  }
}

TEST_CASE("Gibbs and integrability residuals") {
  for (Statistics st : {Statistics::nondegenerate, Statistics::fermion, Statistics::boson}) {
    const JuttnerDistribution d(st);
    for (double z : {0.1, 1.0, 10.0}) {
      const auto rep = gibbs_residual([&](double l, double g) { return juttner_potential(d, l, g, 1.0); }, 0.2, z);
      CHECK(rep.max_relative() <= 1e-8);
    }
  }
  // H = a(lambda) gamma^-4 with a = e^{-2 lambda}
  const auto mono = [](double l, double g) {
    PotentialValues v;
    v.H = std::exp(-2 * l) * std::pow(g, -4);
    v.H_lambda = -2 * v.H;
    v.H_gamma = -4 * v.H / g;
    return v;
  };
  CHECK(gibbs_residual(mono, 0.3, 1.5).max_relative() <= 1e-8);
}

TEST_CASE("equilibrium h' and moments") {
  const ThermoState st(0.1, Vec4::upper(1.4, 0.3, -0.2, 0.5), 1.0);
  const auto v = equilibrium_potential(st);
  const auto f = state_functions(v, st.lambda(), st.gamma());
  const auto out = equilibrium_hprime(st, v);
  const Vec4 u = st.velocity();
  for (int a = 0; a < 4; ++a) {
    CHECK(testing::close(out.A[a], f.n * u[a], 1e-12, 1e-12));
    CHECK(testing::close(out.hprime[a], v.H * st.mu_upper()[a], 1e-12, 1e-12));
  }
  const Vec4 ul = u.lowered();
  double buu = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) buu += out.B({a, b}) * ul[a] * ul[b];
  }
  CHECK(testing::close(buu, f.e, 1e-10));
  CHECK(testing::close(trace_pair(out.B)[0], -f.e + 3 * f.p, 1e-10));
}
