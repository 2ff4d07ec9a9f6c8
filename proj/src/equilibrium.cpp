#include "etclosure/equilibrium.hpp"

#include <cmath>
#include <numbers>

#include "etclosure/quadrature.hpp"

namespace etclosure {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// log(1 + exp(-x)) without overflow
double log1p_exp_neg(double x) { return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

}  // namespace

JuttnerDistribution::JuttnerDistribution(Statistics stats, PhysicalConstants c) : stats_(stats), c_(c) {
  if (!(c.k_B > 0.0) || !(c.h_planck > 0.0) || !(c.spin_weight > 0.0)) {
    throw DomainError("physical constants must be positive");
  }
  norm_ = c.spin_weight / (c.h_planck * c.h_planck * c.h_planck);
}

double JuttnerDistribution::F(double X, double Y) const {
  const double x = (X + Y) / c_.k_B;
  switch (stats_) {
    case Statistics::nondegenerate: return -c_.k_B * norm_ * std::exp(-x);
    case Statistics::fermion: return -c_.k_B * norm_ * log1p_exp_neg(x);
    case Statistics::boson:
      if (!(x > 0.0)) throw DomainError("Bose distribution needs X + Y > 0");
      return c_.k_B * norm_ * std::log(-std::expm1(-x));
  }
  return 0.0;
}

double JuttnerDistribution::f(double X, double Y) const { return std::exp(log_f(X, Y)); }

double JuttnerDistribution::F_Y(double X, double Y) const { return f(X, Y); }

double JuttnerDistribution::log_f(double X, double Y) const {
  const double x = (X + Y) / c_.k_B;
  const double ln = std::log(norm_);
  switch (stats_) {
    case Statistics::nondegenerate: return ln - x;
    case Statistics::fermion: return ln - x - log1p_exp_neg(x);
    case Statistics::boson:
      if (!(x > 0.0)) throw DomainError("Bose distribution needs X + Y > 0");
      return ln - x - std::log(-std::expm1(-x));
  }
  return 0.0;
}

double JuttnerDistribution::log_abs_F(double X, double Y) const {
  const double x = (X + Y) / c_.k_B;
  const double ln = std::log(c_.k_B * norm_);
  switch (stats_) {
    case Statistics::nondegenerate: return ln - x;
    case Statistics::fermion: {
      // log(log1p(e^-x)); for large x log1p(e^-x) ~ e^-x
      if (x > 30.0) return ln - x + std::log1p(-0.5 * std::exp(-x));
      return ln + std::log(log1p_exp_neg(x));
    }
    case Statistics::boson: {
      if (!(x > 0.0)) throw DomainError("Bose distribution needs X + Y > 0");
      if (x > 30.0) return ln - x + std::log1p(0.5 * std::exp(-x));
      return ln + std::log(-std::log(-std::expm1(-x)));
    }
  }
  return 0.0;
}

double H_from_distribution(const DistributionFn& F, double lambda, double gamma, double mass) {
  if (!(gamma > 0.0) || !(mass > 0.0)) throw DomainError("H needs gamma > 0 and m > 0");
  auto g = [&](double rho) {
    const double v = F(lambda, gamma * mass * std::cosh(rho));
    if (v == 0.0) return 0.0;
    const double sh = std::sinh(rho);
    return v * sh * sh;
  };
  const QuadratureResult r = integrate_half_line(g);
  return -kFourPi / gamma * mass * mass * mass * r.value;
}

PotentialValues juttner_potential(const JuttnerDistribution& dist, double lambda, double gamma, double mass) {
  if (!(gamma > 0.0) || !(mass > 0.0)) throw DomainError("H needs gamma > 0 and m > 0");
  const double gm = gamma * mass;
  // F < 0, f > 0 for all three statistics
  auto g_F = [&](double rho) {
    if (rho == 0.0) return 0.0;
    return -std::exp(dist.log_abs_F(lambda, gm * std::cosh(rho)) + 2.0 * log_sinh(rho));
  };
  auto g_f = [&](double rho) {
    if (rho == 0.0) return 0.0;
    return std::exp(dist.log_f(lambda, gm * std::cosh(rho)) + 2.0 * log_sinh(rho));
  };
  auto g_fc = [&](double rho) {
    if (rho == 0.0) return 0.0;
    return std::exp(dist.log_f(lambda, gm * std::cosh(rho)) + 2.0 * log_sinh(rho) + log_cosh(rho));
  };
  const double pre = -kFourPi / gamma * mass * mass * mass;
  PotentialValues v;
  v.H = pre * integrate_half_line(g_F).value;
  v.H_lambda = pre * integrate_half_line(g_f).value;
  v.H_gamma = -v.H / gamma + pre * mass * integrate_half_line(g_fc).value;
  return v;
}

PotentialValues equilibrium_potential(const ThermoState& state) {
  JuttnerDistribution dist(state.statistics(), state.constants());
  return juttner_potential(dist, state.lambda(), state.gamma(), state.mass());
}

PotentialValues maxwell_juttner_closed_form(double lambda, double gamma, double mass, const PhysicalConstants& c) {
  const double k = c.k_B;
  const double C = c.spin_weight / (c.h_planck * c.h_planck * c.h_planck);
  const double z = gamma * mass / k;
  const double a = kFourPi * mass * mass * mass * k * C * std::exp(-lambda / k);
  const double k1 = bessel_k(1, z);
  const double k2 = bessel_k(2, z);
  PotentialValues v;
  v.H = a * k1 / (gamma * z);
  v.H_lambda = -v.H / k;
  // d/dgamma [K1(z)/(gamma z)] with d(K1(z)/z)/dz = -K2(z)/z
  v.H_gamma = a * (-k1 / (gamma * gamma * z) - (mass / k) * k2 / (gamma * z));
  return v;
}

EquilibriumFunctions state_functions(double H, double H_lambda, double H_gamma, double lambda, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("state functions need gamma > 0");
  if (H_lambda == 0.0) throw DomainError("entropy undefined: dH/dlambda = 0");
  EquilibriumFunctions out;
  out.H = H;
  out.H_lambda = H_lambda;
  out.H_gamma = H_gamma;
  out.p = H;
  out.e = -H - gamma * H_gamma;
  out.n = gamma * H_lambda;
  out.s = -lambda - gamma * H_gamma / H_lambda;
  out.T = 1.0 / gamma;
  return out;
}

double GibbsReport::max_relative() const {
  return std::max({std::fabs(gibbs_lambda), std::fabs(gibbs_gamma), std::fabs(integrability)});
}

GibbsReport gibbs_residual(const PotentialFn& potential, double lambda, double gamma, double rel_step) {
  const double hl = rel_step * std::max(1.0, std::fabs(lambda));
  const double hg = rel_step * gamma;
  auto at = [&](double l, double g) { return state_functions(potential(l, g), l, g); };
  const EquilibriumFunctions c = at(lambda, gamma);
  // 5-point stencils, offsets -2..2 (index 2 is the centre)
  std::array<EquilibriumFunctions, 5> sl, sg;
  for (int i = 0; i < 5; ++i) {
    sl[static_cast<std::size_t>(i)] = i == 2 ? c : at(lambda + (i - 2) * hl, gamma);
    sg[static_cast<std::size_t>(i)] = i == 2 ? c : at(lambda, gamma + (i - 2) * hg);
  }
  auto d = [](const std::array<EquilibriumFunctions, 5>& s, double h, auto get) {
    return (get(s[0]) - 8.0 * get(s[1]) + 8.0 * get(s[3]) - get(s[4])) / (12.0 * h);
  };
  auto ds = [](const EquilibriumFunctions& f) { return f.s; };
  auto den = [](const EquilibriumFunctions& f) { return f.e / f.n; };
  auto inv_n = [](const EquilibriumFunctions& f) { return 1.0 / f.n; };
  auto nn = [](const EquilibriumFunctions& f) { return f.n; };
  auto ee = [](const EquilibriumFunctions& f) { return f.e; };

  GibbsReport rep;
  {
    const double a = c.T * d(sl, hl, ds), b = d(sl, hl, den), q = c.p * d(sl, hl, inv_n);
    rep.gibbs_lambda = (a - b - q) / std::max(std::fabs(a) + std::fabs(b) + std::fabs(q), 1e-300);
  }
  {
    const double a = c.T * d(sg, hg, ds), b = d(sg, hg, den), q = c.p * d(sg, hg, inv_n);
    rep.gibbs_gamma = (a - b - q) / std::max(std::fabs(a) + std::fabs(b) + std::fabs(q), 1e-300);
  }
  // change of variables (lambda, gamma) -> (gamma, p), p = H
  const double n_l = d(sl, hl, nn), n_g = d(sg, hg, nn);
  const double e_l = d(sl, hl, ee);
  const double n_p = n_l / c.H_lambda;
  const double e_p = e_l / c.H_lambda;
  const double n_gp = n_g - c.H_gamma / c.H_lambda * n_l;
  const double t1 = (c.e + c.p) * n_p, t2 = gamma * n_gp, t3 = c.n * e_p;
  rep.integrability = (t1 - t2 - t3) / std::max(std::fabs(t1) + std::fabs(t2) + std::fabs(t3), 1e-300);
  return rep;
}

EquilibriumHprime equilibrium_hprime(const ThermoState& state, const PotentialValues& v) {
  EquilibriumHprime out;
  const Vec4& mu = state.mu_upper();
  out.hprime = mu;
  out.A = mu;
  for (int a = 0; a < 4; ++a) {
    out.hprime[a] = v.H * mu[a];
    out.A[a] = v.H_lambda * mu[a];
  }
  const double g = state.gamma();
  out.B = gmu_basis(2, 0, mu) * (-v.H_gamma / g) + gmu_basis(2, 1, mu) * v.H;
  return out;
}

}  // namespace etclosure
