#include "etclosure/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "etclosure/errors.hpp"

namespace etclosure::oracle {

namespace {

constexpr int kDiag[4] = {-1, 1, 1, 1};

void guard(int rank, int max_rank) {
  if (rank > max_rank) {
    throw DomainError("oracle rank " + std::to_string(rank) + " above the guard " + std::to_string(max_rank));
  }
}

std::size_t pow4(int n) { return static_cast<std::size_t>(1) << (2 * n); }

template <class T>
T scale_by(const T& x, long k) {
  return x * T(k);
}

}  // namespace

void OracleConfig::validate() const {
  if (max_rank < 0 || max_rank > 8) throw DomainError("oracle max_rank must be in [0, 8]");
  if (!(fd_step > 0.0)) throw DomainError("oracle fd_step must be positive");
}

template <class T>
Array<T>::Array(int n) : rank(n), comps(pow4(n), T(0)) {}

template <class T>
T& Array<T>::at(const std::vector<int>& idx) {
  return comps[flatten(idx)];
}

template <class T>
const T& Array<T>::at(const std::vector<int>& idx) const {
  return comps[flatten(idx)];
}

std::vector<int> digits(std::size_t flat, int rank) {
  std::vector<int> idx(static_cast<std::size_t>(rank));
  for (int k = rank - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % 4);
    flat /= 4;
  }
  return idx;
}

std::size_t flatten(const std::vector<int>& idx) {
  std::size_t flat = 0;
  for (int i : idx) flat = flat * 4 + static_cast<std::size_t>(i);
  return flat;
}

template <class T>
Array<T> brute_symmetrize(const Array<T>& raw, int max_rank) {
  guard(raw.rank, max_rank);
  const int n = raw.rank;
  Array<T> out(n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  long count = 1;
  for (int k = 2; k <= n; ++k) count *= k;
  // every ordering of one multiset shares the same average; compute it once
  std::map<std::vector<int>, T> done;
  for (std::size_t flat = 0; flat < raw.comps.size(); ++flat) {
    const std::vector<int> idx = digits(flat, n);
    std::vector<int> key = idx;
    std::sort(key.begin(), key.end());
    if (auto it = done.find(key); it != done.end()) {
      out.comps[flat] = it->second;
      continue;
    }
    std::iota(perm.begin(), perm.end(), 0);
    T sum = T(0);
    do {
      std::vector<int> p(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
      sum += raw.at(p);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.comps[flat] = sum / T(count);
    done.emplace(std::move(key), out.comps[flat]);
  }
  return out;
}

template <class T>
Array<T> brute_basis(int n, int s, const FourVector<T>& mu, int max_rank) {
  guard(n, max_rank);
  if (s < 0 || 2 * s > n) throw DomainError("brute_basis: s out of range");
  Array<T> outer(n);
  for (std::size_t flat = 0; flat < outer.comps.size(); ++flat) {
    const std::vector<int> idx = digits(flat, n);
    T v = T(1);
    for (int k = 0; k < s; ++k) {
      const int a = idx[static_cast<std::size_t>(2 * k)];
      const int b = idx[static_cast<std::size_t>(2 * k + 1)];
      if (a != b) {
        v = T(0);
        break;
      }
      v *= T(kDiag[a]);
    }
    if (v == T(0)) continue;
    for (int k = 2 * s; k < n; ++k) v *= mu.c[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    outer.comps[flat] = v;
  }
  return brute_symmetrize(outer, max_rank);
}

template <class T>
Array<T> brute_trace(const Array<T>& raw) {
  if (raw.rank < 2) throw DomainError("brute_trace needs rank >= 2");
  Array<T> out(raw.rank - 2);
  for (std::size_t flat = 0; flat < out.comps.size(); ++flat) {
    std::vector<int> idx = digits(flat, out.rank);
    idx.push_back(0);
    idx.push_back(0);
    T sum = T(0);
    for (int c = 0; c < 4; ++c) {
      for (int d = 0; d < 4; ++d) {
        if (c != d) continue;
        idx[idx.size() - 2] = c;
        idx[idx.size() - 1] = d;
        sum += T(kDiag[c]) * raw.at(idx);
      }
    }
    out.comps[flat] = sum;
  }
  return out;
}

template <class T>
Array<T> brute_mu_contract(const Array<T>& raw, const FourVector<T>& mu) {
  if (raw.rank < 1) throw DomainError("brute_mu_contract needs rank >= 1");
  std::array<T, 4> low;
  for (int a = 0; a < 4; ++a) {
    low[static_cast<std::size_t>(a)] = mu.variance == Variance::covariant ? mu.c[static_cast<std::size_t>(a)]
                                                                         : T(kDiag[a]) * mu.c[static_cast<std::size_t>(a)];
  }
  Array<T> out(raw.rank - 1);
  for (std::size_t flat = 0; flat < out.comps.size(); ++flat) {
    std::vector<int> idx = digits(flat, out.rank);
    idx.push_back(0);
    T sum = T(0);
    for (int c = 0; c < 4; ++c) {
      idx.back() = c;
      sum += raw.at(idx) * low[static_cast<std::size_t>(c)];
    }
    out.comps[flat] = sum;
  }
  return out;
}

ExactArray brute_realize(const FFamilyElement& f, const ExactPoint& at, const PolynomialRegistry& reg, int max_rank) {
  at.validate();
  ExactArray out(f.rank());
  for (int s = 0; s <= f.top(); ++s) {
    if (f.phi(s).is_zero()) continue;
    const Rational v = evaluate_exact(f.phi(s), at.lambda, at.gamma, at.mass_sq, reg);
    const ExactArray y = brute_basis(f.rank(), s, at.mu, max_rank);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += v * y.comps[i];
  }
  return out;
}

RealArray brute_realize(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg, int max_rank) {
  RealArray out(f.rank());
  for (int s = 0; s <= f.top(); ++s) {
    if (f.phi(s).is_zero()) continue;
    const double v = evaluate(f.phi(s), state.eval_point(), reg);
    const RealArray y = brute_basis(f.rank(), s, state.mu_upper(), max_rank);
    for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += v * y.comps[i];
  }
  return out;
}

namespace {

RealArray central_difference(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg, double h) {
  const Vec4 low = state.mu_lower();
  RealArray out(f.rank() + 1);
  for (int b = 0; b < 4; ++b) {
    Vec4 plus = low, minus = low;
    plus[b] += h;
    minus[b] -= h;
    ThermoState sp(state.lambda(), plus, state.mass(), state.statistics(), state.constants());
    ThermoState sm(state.lambda(), minus, state.mass(), state.statistics(), state.constants());
    const DenseSymTensor tp = realize(f, sp, reg);
    const DenseSymTensor tm = realize(f, sm, reg);
    for (std::size_t flat = 0; flat < pow4(f.rank()); ++flat) {
      std::vector<int> idx = digits(flat, f.rank());
      const double d = (tp(std::span<const int>(idx)) - tm(std::span<const int>(idx))) / (2.0 * h);
      idx.push_back(b);
      out.at(idx) = d;
    }
  }
  return out;
}

}  // namespace

RealArray fd_mu_derivative(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg,
                           double rel_step, bool richardson) {
  if (!(rel_step > 0.0)) throw DomainError("fd step must be positive");
  const double h = rel_step * state.gamma();
  RealArray coarse = central_difference(f, state, reg, h);
  if (!richardson) return coarse;
  const RealArray fine = central_difference(f, state, reg, h / 2);
  for (std::size_t i = 0; i < coarse.comps.size(); ++i) coarse.comps[i] = (4.0 * fine.comps[i] - coarse.comps[i]) / 3.0;
  return coarse;
}

template <class T>
bool equal_exact(const Array<T>& raw, const SymTensor<T>& t) {
  if (raw.rank != t.rank()) return false;
  for (std::size_t flat = 0; flat < raw.comps.size(); ++flat) {
    const std::vector<int> idx = digits(flat, raw.rank);
    if (raw.comps[flat] != t(std::span<const int>(idx))) return false;
  }
  return true;
}

double max_abs_diff(const RealArray& raw, const DenseSymTensor& t) {
  if (raw.rank != t.rank()) throw DomainError("rank mismatch");
  double worst = 0.0;
  for (std::size_t flat = 0; flat < raw.comps.size(); ++flat) {
    const std::vector<int> idx = digits(flat, raw.rank);
    worst = std::max(worst, std::fabs(raw.comps[flat] - t(std::span<const int>(idx))));
  }
  return worst;
}

double max_abs(const RealArray& raw) {
  double m = 0.0;
  for (double x : raw.comps) m = std::max(m, std::fabs(x));
  return m;
}

template <class T>
Array<T> from_symmetric(const SymTensor<T>& t) {
  Array<T> out(t.rank());
  for (std::size_t flat = 0; flat < out.comps.size(); ++flat) {
    const std::vector<int> idx = digits(flat, t.rank());
    out.comps[flat] = t(std::span<const int>(idx));
  }
  return out;
}

Rational Generator::rational(int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  return frac(num(rng_), den(rng_));
}

ExactPoint Generator::exact_point() {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> tnum(0, 6);
  // rational unit vector from a stereographic parameter (a, b)
  const Rational a = frac(small(rng_), 2), b = frac(small(rng_), 3);
  const Rational den = 1 + a * a + b * b;
  const Rational nx = 2 * a / den, ny = 2 * b / den, nz = (1 - a * a - b * b) / den;
  // rapidity parameter t in [0, 3/4]: cosh = (1+t^2)/(1-t^2), sinh = 2t/(1-t^2)
  const Rational t = frac(tnum(rng_), 8);
  const Rational ch = (1 + t * t) / (1 - t * t), sh = 2 * t / (1 - t * t);
  std::uniform_int_distribution<int> gnum(4, 12);
  ExactPoint p;
  p.gamma = frac(gnum(rng_), 6);
  p.mu = ExactVec4::upper(p.gamma * ch, p.gamma * sh * nx, p.gamma * sh * ny, p.gamma * sh * nz);
  p.lambda = rational(4, 3);
  std::uniform_int_distribution<int> mnum(2, 6);
  p.mass_sq = frac(mnum(rng_), 4);
  p.validate();
  return p;
}

ThermoState Generator::real_state(double gamma_min, double gamma_max) {
  std::uniform_real_distribution<double> g(gamma_min, gamma_max), dir(-1.0, 1.0), rap(0.0, 0.8), lam(-0.5, 0.5);
  const double gamma = g(rng_);
  double n[3];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : n) {
      x = dir(rng_);
      norm += x * x;
    }
  } while (norm < 1e-4 || norm > 1.0);
  norm = std::sqrt(norm);
  const double r = rap(rng_);
  const Vec4 mu = Vec4::upper(gamma * std::cosh(r), gamma * std::sinh(r) * n[0] / norm,
                              gamma * std::sinh(r) * n[1] / norm, gamma * std::sinh(r) * n[2] / norm);
  return ThermoState(lam(rng_), mu, 1.0);
}

PolynomialRegistry Generator::polynomial_registry(int count, int degree) {
  PolynomialRegistry reg;
  for (int q = 0; q < count; ++q) {
    std::vector<Rational> c;
    for (int i = 0; i <= degree; ++i) c.push_back(rational(5, 4));
    reg.set(q, std::move(c));
  }
  return reg;
}

FFamilyElement Generator::family_element(int rank, int q_count, bool with_symbols) {
  std::uniform_int_distribution<int> nterms(1, 3), gp(-14, 4), mp(0, 2), qd(0, std::max(0, q_count - 1)), ord(0, 2),
      coin(0, 1);
  ScalarExpr lead;
  const int terms = nterms(rng_);
  for (int i = 0; i < terms; ++i) {
    std::optional<Symbol> sym;
    if (with_symbols && q_count > 0 && coin(rng_) == 1) sym = Symbol{qd(rng_), ord(rng_)};
    Rational c = rational(6, 5);
    if (c == 0) c = 1;
    lead += ScalarExpr::monomial(c, gp(rng_), mp(rng_), sym);
  }
  return FFamilyElement::from_leading(rank, lead);
}

MultiplierState Generator::deviation_state(const ThermoState& base, const ClosureSpec& spec, double amplitude) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DenseSymTensor lam(spec.M), mu(spec.N);
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = amplitude * u(rng_);
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = amplitude * u(rng_);
  const double msq = base.mass() * base.mass();
  if (spec.M == 0) lam *= 0.0;
  return MultiplierState(base, make_deviation(lam, msq), make_deviation(mu, msq), spec);
}

template <class T>
Array<T> Generator::raw_array(int rank) {
  Array<T> a(rank);
  for (auto& x : a.comps) {
    if constexpr (std::is_same_v<T, Rational>) {
      x = rational(9, 7);
    } else {
      x = std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
    }
  }
  return a;
}

template struct Array<Rational>;
template struct Array<double>;
template Array<Rational> brute_symmetrize(const Array<Rational>&, int);
template Array<double> brute_symmetrize(const Array<double>&, int);
template Array<Rational> brute_basis(int, int, const FourVector<Rational>&, int);
template Array<double> brute_basis(int, int, const FourVector<double>&, int);
template Array<Rational> brute_trace(const Array<Rational>&);
template Array<double> brute_trace(const Array<double>&);
template Array<Rational> brute_mu_contract(const Array<Rational>&, const FourVector<Rational>&);
template Array<double> brute_mu_contract(const Array<double>&, const FourVector<double>&);
template bool equal_exact(const Array<Rational>&, const SymTensor<Rational>&);
template bool equal_exact(const Array<double>&, const SymTensor<double>&);
template Array<Rational> from_symmetric(const SymTensor<Rational>&);
template Array<double> from_symmetric(const SymTensor<double>&);
template Array<Rational> Generator::raw_array<Rational>(int);
template Array<double> Generator::raw_array<double>(int);

}  // namespace etclosure::oracle
