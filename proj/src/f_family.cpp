#include "etclosure/f_family.hpp"

#include <sstream>
#include <string>

#include "etclosure/errors.hpp"

namespace etclosure {

namespace {

// (1/gamma) d/dgamma
ScalarExpr inv_gamma_d_gamma(const ScalarExpr& e) { return e.d_gamma_sq() * 2; }

ScalarExpr minus_gamma_sq(const ScalarExpr& e) { return -e.times_gamma(2); }

// gamma power of an admissible monomial, as p in gamma^{-2(3+p)}
int monomial_p(const TermKey& k) {
  if (k.gamma_pow % 2 != 0) {
    throw DomainError("leading monomial has odd gamma power " + std::to_string(k.gamma_pow));
  }
  return -k.gamma_pow / 2 - 3;
}

}  // namespace

FFamilyElement::FFamilyElement(int rank) : rank_(rank) {
  if (rank < 0) throw DomainError("negative rank");
  phi_.assign(static_cast<std::size_t>(rank / 2 + 1), ScalarExpr{});
}

FFamilyElement::FFamilyElement(int rank, std::vector<ScalarExpr> phi) : rank_(rank), phi_(std::move(phi)) {
  if (rank < 0) throw DomainError("negative rank");
  if (phi_.size() != static_cast<std::size_t>(rank / 2 + 1)) {
    throw DomainError("rank " + std::to_string(rank) + " needs " + std::to_string(rank / 2 + 1) +
                      " coefficients, got " + std::to_string(phi_.size()));
  }
}

FFamilyElement FFamilyElement::from_leading(int rank, const ScalarExpr& leading) {
  FFamilyElement f(rank);
  const int n = rank;
  f.phi(f.top()) = leading;
  for (int s = f.top(); s >= 1; --s) {
    ScalarExpr lower = inv_gamma_d_gamma(f.phi(s)) * frac(-2 * s, (n - 2 * s + 2) * (n - 2 * s + 1));
    f.phi(s - 1) = lower;
  }
  return f;
}

const ScalarExpr& FFamilyElement::phi(int s) const {
  if (s < 0 || s > top()) throw DomainError("coefficient index out of range");
  return phi_[static_cast<std::size_t>(s)];
}

ScalarExpr& FFamilyElement::phi(int s) {
  if (s < 0 || s > top()) throw DomainError("coefficient index out of range");
  return phi_[static_cast<std::size_t>(s)];
}

bool FFamilyElement::is_zero() const {
  for (const auto& p : phi_)
    if (!p.is_zero()) return false;
  return true;
}

FFamilyElement& FFamilyElement::operator+=(const FFamilyElement& o) {
  if (o.rank_ != rank_) throw DomainError("rank mismatch");
  for (std::size_t i = 0; i < phi_.size(); ++i) phi_[i] += o.phi_[i];
  return *this;
}

FFamilyElement& FFamilyElement::operator-=(const FFamilyElement& o) {
  if (o.rank_ != rank_) throw DomainError("rank mismatch");
  for (std::size_t i = 0; i < phi_.size(); ++i) phi_[i] -= o.phi_[i];
  return *this;
}

FFamilyElement& FFamilyElement::operator*=(const Rational& c) {
  for (auto& p : phi_) p *= c;
  return *this;
}

FFamilyElement FFamilyElement::times(const ScalarExpr& factor) const {
  FFamilyElement r = *this;
  for (auto& p : r.phi_) p = p * factor;
  return r;
}

FFamilyElement FFamilyElement::times_msq(int j) const {
  FFamilyElement r = *this;
  for (auto& p : r.phi_) p = p.times_msq(j);
  return r;
}

FFamilyElement FFamilyElement::d_lambda(int times) const {
  FFamilyElement r = *this;
  for (auto& p : r.phi_) p = p.d_lambda(times);
  return r;
}

std::string FFamilyElement::to_string() const {
  std::ostringstream os;
  os << "rank " << rank_ << ":";
  for (int s = 0; s <= top(); ++s) os << " phi" << s << " = " << phi(s).to_string() << ";";
  return os.str();
}

CharacteristicReport check_characteristic(const FFamilyElement& f) {
  CharacteristicReport rep;
  const int n = f.rank();
  for (int s = 1; s <= f.top(); ++s) {
    ScalarExpr r = inv_gamma_d_gamma(f.phi(s)) * (2 * s);
    r += f.phi(s - 1) * ((n - 2 * s + 2) * (n - 2 * s + 1));
    if (!r.is_zero()) rep.ok = false;
    rep.residuals.push_back(std::move(r));
  }
  return rep;
}

FFamilyElement mu_derivative(const FFamilyElement& f) {
  auto rep = check_characteristic(f);
  if (!rep.ok) throw CharacteristicViolation("mu_derivative: input is not in the family (" + f.to_string() + ")");
  const int n = f.rank();
  FFamilyElement d(n + 1);
  d.phi(0) = -inv_gamma_d_gamma(f.phi(0));
  for (int s = 1; s <= d.top(); ++s) {
    d.phi(s) = f.phi(s - 1) * frac((n + 1) * (n - 2 * s + 2), 2 * s);
  }
  return d;
}

FFamilyElement mu_derivative(const FFamilyElement& f, int times) {
  FFamilyElement r = f;
  for (int i = 0; i < times; ++i) r = mu_derivative(r);
  return r;
}

FFamilyElement trace(const FFamilyElement& f) {
  if (f.rank() < 2) throw DomainError("trace needs rank >= 2");
  const int n = f.rank() - 2;
  FFamilyElement t(n);
  const Rational norm = frac(1, (n + 2) * (n + 1));
  for (int s = 0; s <= t.top(); ++s) {
    ScalarExpr v = f.phi(s + 1) * (4 * (s + 1) * (n - s + 2));
    v += minus_gamma_sq(f.phi(s)) * ((n + 2 - 2 * s) * (n + 1 - 2 * s));
    t.phi(s) = v * norm;
  }
  return t;
}

FFamilyElement trace(const FFamilyElement& f, int times) {
  FFamilyElement r = f;
  for (int i = 0; i < times; ++i) r = trace(r);
  return r;
}

FFamilyElement lift(const FFamilyElement& f, int r, const std::vector<ScalarExpr>& free) {
  if (r < 1) throw DomainError("lift needs r >= 1");
  if (static_cast<int>(free.size()) != r) {
    throw DomainError("lift: expected " + std::to_string(r) + " free functions, got " +
                      std::to_string(free.size()));
  }
  if (!check_characteristic(f).ok) throw CharacteristicViolation("lift: input is not in the family");
  const int m = f.rank();
  const int hm = m / 2;
  const Rational shape = frac(factorial(m + 2 * r), factorial(m)) * double_factorial_ratio(2 * hm, 2 * hm + 2 * r);

  ScalarExpr lead;
  for (const auto& [key, coeff] : f.leading().terms()) {
    const int p = monomial_p(key);
    Rational ratio;
    try {
      ratio = double_factorial_ratio(2 * m - 2 * hm - 2 * p - 4, 2 * m - 2 * hm + 2 * r - 2 * p - 4);
    } catch (const SingularRatioError&) {
      throw LiftHypothesisError("lift: leading power gamma^" + std::to_string(key.gamma_pow) + " (p=" +
                                std::to_string(p) + ") is excluded for rank " + std::to_string(m) +
                                ", r=" + std::to_string(r));
    }
    lead += ScalarExpr::monomial(coeff * shape * ratio, key.gamma_pow, key.msq_pow, key.sym);
  }
  for (int i = 0; i < r; ++i) {
    for (const auto& [key, coeff] : free[static_cast<std::size_t>(i)].terms()) {
      if (key.gamma_pow != 0) throw DomainError("lift: free functions must not depend on gamma");
    }
    const int pow = -2 * (3 + m + i - (m + 2) / 2);
    lead += free[static_cast<std::size_t>(i)].times_gamma(pow);
  }
  return FFamilyElement::from_leading(m + 2 * r, lead);
}

ScalarExpr leading_after_traces(const FFamilyElement& f, int r) {
  const int n = f.rank();
  if (r < 0 || 2 * r > n) throw DomainError("leading_after_traces: need 0 <= 2r <= rank");
  if (r == 0) return f.leading();
  const int two_half = 2 * ((n + 1) / 2);
  const Rational df = double_factorial_ratio(two_half - 2 * r - 1, two_half - 1);
  ScalarExpr out;
  for (const auto& [key, coeff] : f.leading().terms()) {
    const int p = monomial_p(key);
    if (p < 0) {
      throw DomainError("leading_after_traces: gamma^" + std::to_string(key.gamma_pow) +
                        " is not of the form gamma^{-2(3+p)} with p >= 0");
    }
    const Integer e = eta(two_half - 2 * r - 2 - 2 * p, two_half - 4 - 2 * p);
    out += ScalarExpr::monomial(coeff * df * Rational(e), key.gamma_pow, key.msq_pow, key.sym);
  }
  return out;
}

FFamilyElement basis_mu_contraction(int n, int r) {
  if (n < 0 || n % 2 != 0) throw DomainError("basis_mu_contraction needs even n");
  if (r < 0 || r > n) throw DomainError("basis_mu_contraction needs 0 <= r <= n");
  FFamilyElement out(n - r);
  if (r <= 1) {
    out.phi(out.top()) = ScalarExpr(Rational(1));
    return out;
  }
  for (int s = 0; s <= out.top(); ++s) {
    if (s < n / 2 - r) continue;
    const int j = s + r - n / 2;
    Rational c = Rational(factorial(r) * factorial(n - r));
    c /= double_factorial(2 * s + 2 * r - n) * double_factorial(2 * s) * Rational(factorial(n - r - 2 * s)) *
         double_factorial(n - 1);
    if (j % 2 != 0) c = -c;
    out.phi(s) = ScalarExpr::monomial(c, 2 * j);
  }
  return out;
}

DenseSymTensor realize(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg) {
  DenseSymTensor out(f.rank());
  const EvalPoint at = state.eval_point();
  for (int s = 0; s <= f.top(); ++s) {
    if (f.phi(s).is_zero()) continue;
    const double v = evaluate(f.phi(s), at, reg);
    out += gmu_basis(f.rank(), s, state.mu_upper()) * v;
  }
  return out;
}

ExactSymTensor realize_exact(const FFamilyElement& f, const ExactPoint& at, const PolynomialRegistry& reg) {
  at.validate();
  ExactSymTensor out(f.rank());
  for (int s = 0; s <= f.top(); ++s) {
    if (f.phi(s).is_zero()) continue;
    const Rational v = evaluate_exact(f.phi(s), at.lambda, at.gamma, at.mass_sq, reg);
    out += gmu_basis(f.rank(), s, at.mu) * v;
  }
  return out;
}

}  // namespace etclosure
