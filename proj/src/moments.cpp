#include "etclosure/moments.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "etclosure/f_family.hpp"
#include "etclosure/quadrature.hpp"

namespace etclosure {

namespace {

double factorial_d(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Vec4 as_vector(const DenseSymTensor& t) {
  Vec4 v;
  for (int a = 0; a < 4; ++a) v[a] = t.at_counts(Counts{a == 0, a == 1, a == 2, a == 3});
  return v;
}

DenseSymTensor contract_powers(DenseSymTensor t, const DenseSymTensor& lam, int h, const DenseSymTensor& mu, int k) {
  for (int i = 0; i < k; ++i) t = contract(t, mu);
  for (int i = 0; i < h; ++i) t = contract(t, lam);
  return t;
}

// reference: size of the equilibrium part the deviation is added to
void check_deviation(const DenseSymTensor& dev, double mass_sq, double reference, const char* what) {
  const double size = std::max(max_abs(dev), reference);
  if (size == 0.0) return;
  const double drift = max_abs(dev - make_deviation(dev, mass_sq));
  if (drift > 1e-10 * size) {
    throw DomainError(std::string(what) + " deviation carries an equilibrium component");
  }
}

}  // namespace

MultiplierState::MultiplierState(ThermoState base, DenseSymTensor lambda_dev, DenseSymTensor mu_dev, ClosureSpec spec)
    : base_(std::move(base)), lambda_dev_(std::move(lambda_dev)), mu_dev_(std::move(mu_dev)), spec_(std::move(spec)) {
  spec_.validate();
  if (lambda_dev_.rank() != spec_.M) throw DomainError("lambda deviation must have rank M");
  if (mu_dev_.rank() != spec_.N) throw DomainError("mu deviation must have rank N");
  const double msq = base_.mass() * base_.mass();
  check_deviation(lambda_dev_, msq, max_abs(equilibrium_lambda(base_.lambda(), spec_.M, msq)), "lambda");
  check_deviation(mu_dev_, msq, max_abs(equilibrium_mu(base_.mu_lower(), spec_.N, msq)), "mu");
}

MultiplierState MultiplierState::at_equilibrium(ThermoState base, ClosureSpec spec) {
  const int M = spec.M;
  const int N = spec.N;
  return MultiplierState(std::move(base), DenseSymTensor(M), DenseSymTensor(N), std::move(spec));
}

MultiplierState MultiplierState::from_full(const FullMultipliers& full, const ClosureSpec& spec, Statistics stats,
                                           PhysicalConstants consts) {
  const double msq = spec.mass * spec.mass;
  const double lambda = project_lambda(full.lambda, msq);
  const Vec4 mu = project_mu(full.mu, msq);
  ThermoState base(lambda, mu, spec.mass, stats, consts);
  return MultiplierState(base, make_deviation(full.lambda, msq), make_deviation(full.mu, msq), spec);
}

FullMultipliers MultiplierState::full() const {
  const double msq = base_.mass() * base_.mass();
  FullMultipliers f;
  f.lambda = equilibrium_lambda(base_.lambda(), spec_.M, msq) + lambda_dev_;
  f.mu = equilibrium_mu(base_.mu_lower(), spec_.N, msq) + mu_dev_;
  return f;
}

std::vector<std::pair<std::pair<int, int>, Vec4>> delta_hprime_terms(const ClosureTensorSet& set,
                                                                     const MultiplierState& state,
                                                                     const FunctionRegistry& reg) {
  std::vector<std::pair<std::pair<int, int>, Vec4>> out;
  const bool lam_zero = max_abs(state.lambda_dev()) == 0.0;
  const bool mu_zero = max_abs(state.mu_dev()) == 0.0;
  for (const auto& [hk, c] : set.tensors) {
    const auto [h, k] = hk;
    if ((h > 0 && lam_zero) || (k > 0 && mu_zero) || c.is_zero()) {
      out.emplace_back(hk, Vec4{});
      continue;
    }
    DenseSymTensor t = realize(c, state.base(), reg);
    t = contract_powers(std::move(t), state.lambda_dev(), h, state.mu_dev(), k);
    t *= 1.0 / (factorial_d(h) * factorial_d(k));
    out.emplace_back(hk, as_vector(t));
  }
  return out;
}

Vec4 delta_hprime(const ClosureTensorSet& set, const MultiplierState& state, const FunctionRegistry& reg) {
  Vec4 sum;
  for (const auto& [hk, v] : delta_hprime_terms(set, state, reg))
    for (int a = 0; a < 4; ++a) sum[a] += v[a];
  return sum;
}

std::pair<DenseSymTensor, DenseSymTensor> delta_moments(const ClosureTensorSet& set, const MultiplierState& state,
                                                        const FunctionRegistry& reg) {
  const int M = set.M;
  const int N = set.N;
  DenseSymTensor dA(M + 1), dB(N + 1);
  for (const auto& [hk, c] : set.tensors) {
    const auto [h, k] = hk;
    if (c.is_zero() || (h == 0 && k == 0)) continue;
    const DenseSymTensor t = realize(c, state.base(), reg);
    if (h >= 1) {
      DenseSymTensor x = contract_powers(t, state.lambda_dev(), h - 1, state.mu_dev(), k);
      dA += x * (1.0 / (factorial_d(h - 1) * factorial_d(k)));
    }
    if (k >= 1) {
      DenseSymTensor x = contract_powers(t, state.lambda_dev(), h, state.mu_dev(), k - 1);
      dB += x * (1.0 / (factorial_d(h) * factorial_d(k - 1)));
    }
  }
  return {dA, dB};
}

namespace {

// max antisymmetric part of G^{a, c}, G stored per output index a as a
// symmetric tensor over the multiplier slots
std::pair<double, double> antisymmetry(const std::array<DenseSymTensor, 4>& G) {
  double scale = 0.0;
  for (const auto& g : G) scale = std::max(scale, max_abs(g));
  double worst = 0.0;
  const MultiIndexTable& tab = G[0].table();
  for (int alpha = 0; alpha < 4; ++alpha) {
    for (std::size_t pos = 0; pos < tab.size(); ++pos) {
      const Counts& c = tab.counts(pos);
      for (int a = 0; a < 4; ++a) {
        if (c[static_cast<std::size_t>(a)] == 0 || a == alpha) continue;
        Counts swapped = c;
        --swapped[static_cast<std::size_t>(a)];
        ++swapped[static_cast<std::size_t>(alpha)];
        const double d = G[static_cast<std::size_t>(alpha)][pos] - G[static_cast<std::size_t>(a)].at_counts(swapped);
        worst = std::max(worst, std::fabs(d));
      }
    }
  }
  return {worst, scale};
}

template <class Eval>
std::array<DenseSymTensor, 4> fd_gradient(const DenseSymTensor& x, double rel_step, Eval&& eval) {
  std::array<DenseSymTensor, 4> G;
  for (auto& g : G) g = DenseSymTensor(x.rank());
  const double step = rel_step * std::max(max_abs(x), 1e-300);
  for (std::size_t pos = 0; pos < x.size(); ++pos) {
    DenseSymTensor plus = x, minus = x;
    plus[pos] += step;
    minus[pos] -= step;
    const Vec4 fp = eval(plus), fm = eval(minus);
    // the canonical entry stands for multiplicity(c) equal components
    const double mult = multiplicity_d(x.table().counts(pos));
    for (int a = 0; a < 4; ++a) G[static_cast<std::size_t>(a)][pos] = (fp[a] - fm[a]) / (2.0 * step * mult);
  }
  return G;
}

}  // namespace

SymmetryReport symmetry_residual(const ClosureTensorSet& set, const MultiplierState& state,
                                 const FunctionRegistry& reg, double rel_step) {
  const FullMultipliers full = state.full();
  const ClosureSpec& spec = state.spec();
  const Statistics stats = state.base().statistics();
  const PhysicalConstants consts = state.base().constants();
  auto eval = [&](const FullMultipliers& f) {
    return delta_hprime(set, MultiplierState::from_full(f, spec, stats, consts), reg);
  };
  SymmetryReport rep;
  if (spec.M >= 1) {
    auto G = fd_gradient(full.lambda, rel_step, [&](const DenseSymTensor& lam) {
      return eval(FullMultipliers{lam, full.mu});
    });
    auto [worst, scale] = antisymmetry(G);
    rep.lambda_scale = scale;
    rep.lambda_residual = scale > 0.0 ? worst / scale : worst;
  }
  {
    auto G = fd_gradient(full.mu, rel_step, [&](const DenseSymTensor& mu) {
      return eval(FullMultipliers{full.lambda, mu});
    });
    auto [worst, scale] = antisymmetry(G);
    rep.mu_scale = scale;
    rep.mu_residual = scale > 0.0 ? worst / scale : worst;
  }
  return rep;
}

DenseSymTensor kinetic_moment(const ThermoState& state, int rank) {
  if (rank < 0) throw DomainError("negative moment rank");
  const JuttnerDistribution dist(state.statistics(), state.constants());
  const double m = state.mass();
  const double gm = state.gamma() * m;
  const double lambda = state.lambda();

  // rest frame: p = m (cosh rho, sinh rho n), d^3p/p^0 = m^2 sinh^2 rho d rho d Omega
  std::map<std::pair<int, int>, double> radial;
  auto R = [&](int c0, int j) {
    auto it = radial.find({c0, j});
    if (it != radial.end()) return it->second;
    auto g = [&](double rho) {
      if (rho == 0.0) return 0.0;
      return std::exp(dist.log_f(lambda, gm * std::cosh(rho)) + c0 * log_cosh(rho) + (j + 2) * log_sinh(rho));
    };
    const double v = std::pow(m, c0 + j + 2) * integrate_half_line(g).value;
    radial.emplace(std::make_pair(c0, j), v);
    return v;
  };
  DenseSymTensor rest(rank);
  for (std::size_t pos = 0; pos < rest.size(); ++pos) {
    const Counts& c = rest.table().counts(pos);
    if (c[1] % 2 || c[2] % 2 || c[3] % 2) continue;
    const int j = c[1] + c[2] + c[3];
    const Rational ang = double_factorial(c[1] - 1) * double_factorial(c[2] - 1) * double_factorial(c[3] - 1) /
                         double_factorial(j + 1);
    const double omega = 4.0 * std::numbers::pi * ang.get_d();
    rest[pos] = omega * R(c[0], j);
  }
  if (rank == 0) return rest;

  // boost taking (1,0,0,0) to u, applied slot by slot on the full array
  const Vec4 u = state.velocity();
  double L[4][4];
  L[0][0] = u[0];
  for (int i = 1; i < 4; ++i) {
    L[0][i] = u[i];
    L[i][0] = u[i];
    for (int j = 1; j < 4; ++j) L[i][j] = (i == j ? 1.0 : 0.0) + u[i] * u[j] / (1.0 + u[0]);
  }
  const std::size_t total = static_cast<std::size_t>(1) << (2 * rank);
  std::vector<double> raw(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t f = flat;
    Counts c{0, 0, 0, 0};
    for (int k = 0; k < rank; ++k) {
      ++c[f & 3u];
      f >>= 2;
    }
    raw[flat] = rest.at_counts(c);
  }
  std::vector<double> next(total);
  for (int slot = 0; slot < rank; ++slot) {
    const std::size_t stride = static_cast<std::size_t>(1) << (2 * slot);
    for (std::size_t flat = 0; flat < total; ++flat) {
      const int b = static_cast<int>((flat / stride) & 3u);
      const std::size_t base = flat - static_cast<std::size_t>(b) * stride;
      double s = 0.0;
      for (int d = 0; d < 4; ++d) s += L[b][d] * raw[base + static_cast<std::size_t>(d) * stride];
      next[flat] = s;
    }
    raw.swap(next);
  }
  DenseSymTensor lab(rank);
  for (std::size_t pos = 0; pos < lab.size(); ++pos) {
    const Counts& c = lab.table().counts(pos);
    std::size_t flat = 0, stride = 1;
    for (int a = 0; a < 4; ++a) {
      for (int k = 0; k < c[static_cast<std::size_t>(a)]; ++k) {
        flat += static_cast<std::size_t>(a) * stride;
        stride <<= 2;
      }
    }
    lab[pos] = raw[flat];
  }
  return lab;
}

KineticMomentReport equilibrium_moments_with_traces(const ThermoState& state, const ClosureSpec& spec) {
  const int top = std::max(spec.M, spec.N) + 1;
  std::vector<DenseSymTensor> T;
  for (int r = 0; r <= top; ++r) T.push_back(kinetic_moment(state, r));
  KineticMomentReport rep;
  rep.A = T[static_cast<std::size_t>(spec.M + 1)];
  rep.B = T[static_cast<std::size_t>(spec.N + 1)];
  const double msq = state.mass() * state.mass();
  for (int r = 2; r <= top; ++r) {
    const DenseSymTensor lhs = trace_pair(T[static_cast<std::size_t>(r)]);
    const DenseSymTensor rhs = T[static_cast<std::size_t>(r - 2)] * (-msq);
    const double scale = std::max(max_abs(rhs), 1e-300);
    TraceLink link{r, max_abs(lhs - rhs) / scale};
    rep.max_trace_residual = std::max(rep.max_trace_residual, link.relative_residual);
    rep.traces.push_back(link);
  }
  return rep;
}

MomentSet moment_set(const ClosureTensorSet& set, const MultiplierState& state, const FunctionRegistry& reg) {
  MomentSet ms;
  const ClosureSpec& spec = state.spec();
  ms.A = kinetic_moment(state.base(), spec.M + 1);
  ms.B = kinetic_moment(state.base(), spec.N + 1);
  auto [dA, dB] = delta_moments(set, state, reg);
  ms.delta_A = std::move(dA);
  ms.delta_B = std::move(dB);
  const PotentialValues pv = equilibrium_potential(state.base());
  ms.delta_hprime = delta_hprime(set, state, reg);
  for (int a = 0; a < 4; ++a) ms.hprime[a] = pv.H * state.base().mu_upper()[a] + ms.delta_hprime[a];
  ms.h_max = set.h_max;
  ms.k_max = set.k_max;
  return ms;
}

}  // namespace etclosure
