#pragma once

#include <functional>
#include <utility>

#include "etclosure/errors.hpp"
#include "etclosure/rational.hpp"
#include "etclosure/state.hpp"
#include "etclosure/tensor_dense.hpp"

namespace etclosure {

namespace detail {

template <class T>
T ipow(const T& x, int k) {
  if constexpr (std::is_same_v<T, Rational>) {
    return pow(x, k);
  } else {
    return std::pow(x, k);
  }
}

template <class T>
T exact_or_double(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return q.get_d();
  }
}

inline void check_parity(int M, int N) {
  if (M < 0 || M % 2 != 0) throw DomainError("M must be even and non-negative");
  if (N < 1 || N % 2 != 1) throw DomainError("N must be odd and positive");
}

}  // namespace detail

// lambda g_(..g..) (-m^2)^{-M/2}, covariant components.
template <class T>
SymTensor<T> equilibrium_lambda(const T& lambda, int M, const T& mass_sq) {
  detail::check_parity(M, 1);
  return gmu_basis(M, M / 2, FourVector<T>{}) * (lambda * detail::ipow<T>(-mass_sq, -M / 2));
}

// mu_(a g..g) (-m^2)^{-(N-1)/2}, covariant components.
template <class T>
SymTensor<T> equilibrium_mu(const FourVector<T>& mu, int N, const T& mass_sq) {
  detail::check_parity(0, N);
  return gmu_basis(N, (N - 1) / 2, mu.lowered()) * detail::ipow<T>(-mass_sq, -(N - 1) / 2);
}

template <class T>
std::pair<SymTensor<T>, SymTensor<T>> equilibrium_multipliers(const T& lambda, const FourVector<T>& mu, int M, int N,
                                                              const T& mass_sq) {
  detail::check_parity(M, N);
  return {equilibrium_lambda(lambda, M, mass_sq), equilibrium_mu(mu, N, mass_sq)};
}

template <class T>
T project_lambda(const SymTensor<T>& lam, const T& mass_sq) {
  const int M = lam.rank();
  detail::check_parity(M, 1);
  SymTensor<T> t = lam;
  for (int i = 0; i < M / 2; ++i) t = trace_pair(t);
  const T pre = detail::exact_or_double<T>(2 * double_factorial(M - 1) / double_factorial(M + 2));
  return pre * t[0] * detail::ipow<T>(-mass_sq, M / 2);
}

// covariant mu_a
template <class T>
FourVector<T> project_mu(const SymTensor<T>& mu, const T& mass_sq) {
  const int N = mu.rank();
  detail::check_parity(0, N);
  SymTensor<T> t = mu;
  for (int i = 0; i < (N - 1) / 2; ++i) t = trace_pair(t);
  const T pre = detail::exact_or_double<T>(8 * double_factorial(N) / double_factorial(N + 3)) *
                detail::ipow<T>(-mass_sq, (N - 1) / 2);
  FourVector<T> out;
  out.variance = Variance::covariant;
  for (int a = 0; a < 4; ++a) out[a] = pre * t.at({a});
  return out;
}

template <class T>
std::pair<T, FourVector<T>> project_equilibrium(const SymTensor<T>& lam, const SymTensor<T>& mu, const T& mass_sq) {
  return {project_lambda(lam, mass_sq), project_mu(mu, mass_sq)};
}

// f = C/(exp((X+Y)/k) +- 1), C = w/h^3, with F chosen so that dF/dX = f and
// F -> 0 as Y -> infinity.
class JuttnerDistribution {
 public:
  explicit JuttnerDistribution(Statistics stats = Statistics::nondegenerate, PhysicalConstants c = {});

  double F(double X, double Y) const;
  double f(double X, double Y) const;  // dF/dX
  double F_Y(double X, double Y) const;
  double log_f(double X, double Y) const;
  double log_abs_F(double X, double Y) const;
  double normalization() const { return norm_; }
  Statistics statistics() const { return stats_; }
  const PhysicalConstants& constants() const { return c_; }

 private:
  Statistics stats_;
  PhysicalConstants c_;
  double norm_;
};

using DistributionFn = std::function<double(double X, double Y)>;

// H = -(4 pi / gamma) m^3 int_0^inf F(lambda, gamma m cosh rho) sinh^2 rho d rho
double H_from_distribution(const DistributionFn& F, double lambda, double gamma, double mass);

struct PotentialValues {
  double H = 0.0;
  double H_lambda = 0.0;
  double H_gamma = 0.0;
};

PotentialValues juttner_potential(const JuttnerDistribution& dist, double lambda, double gamma, double mass);
PotentialValues equilibrium_potential(const ThermoState& state);

// Nondegenerate case in terms of K_1, K_2 (same H definition).
PotentialValues maxwell_juttner_closed_form(double lambda, double gamma, double mass, const PhysicalConstants& c = {});

struct EquilibriumFunctions {
  double H = 0.0;
  double H_lambda = 0.0;
  double H_gamma = 0.0;
  double n = 0.0;
  double p = 0.0;
  double e = 0.0;
  double s = 0.0;
  double T = 0.0;
};

EquilibriumFunctions state_functions(double H, double H_lambda, double H_gamma, double lambda, double gamma);
inline EquilibriumFunctions state_functions(const PotentialValues& v, double lambda, double gamma) {
  return state_functions(v.H, v.H_lambda, v.H_gamma, lambda, gamma);
}

using PotentialFn = std::function<PotentialValues(double lambda, double gamma)>;

struct GibbsReport {
  // T ds - d(e/n) - p d(1/n) along lambda and along gamma, relative
  double gibbs_lambda = 0.0;
  double gibbs_gamma = 0.0;
  // (e+p) n_p - gamma n_gamma - n e_p, with (gamma, p) as coordinates
  double integrability = 0.0;
  double max_relative() const;
};

// Fourth-order central differences; steps are rel_step*max(1,|lambda|) and
// rel_step*gamma.
GibbsReport gibbs_residual(const PotentialFn& potential, double lambda, double gamma, double rel_step = 1e-3);

struct EquilibriumHprime {
  Vec4 hprime;  // H mu^a
  Vec4 A;       // H_lambda mu^a
  DenseSymTensor B;
};

EquilibriumHprime equilibrium_hprime(const ThermoState& state, const PotentialValues& v);

}  // namespace etclosure
