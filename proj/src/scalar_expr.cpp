#include "etclosure/scalar_expr.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "etclosure/errors.hpp"

namespace etclosure {

bool operator<(const TermKey& a, const TermKey& b) {
  // symbol-free terms first, then by symbol, (-m^2) power, descending gamma power
  auto sym_rank = [](const TermKey& k) {
    return k.sym ? std::make_tuple(1, k.sym->q, k.sym->order) : std::make_tuple(0, 0, 0);
  };
  return std::make_tuple(sym_rank(a), a.msq_pow, -a.gamma_pow) <
         std::make_tuple(sym_rank(b), b.msq_pow, -b.gamma_pow);
}

ScalarExpr::ScalarExpr(const Rational& c) { add_term(TermKey{}, c); }

ScalarExpr ScalarExpr::monomial(const Rational& coeff, int gamma_pow, int msq_pow,
                                std::optional<Symbol> sym) {
  if (sym && (sym->q < 0 || sym->order < 0)) throw DomainError("negative symbol index");
  ScalarExpr e;
  e.add_term(TermKey{gamma_pow, msq_pow, sym}, coeff);
  return e;
}

ScalarExpr ScalarExpr::symbol(int q, int order) { return monomial(1, 0, 0, Symbol{q, order}); }

bool ScalarExpr::has_symbols() const {
  for (const auto& [k, c] : terms_)
    if (k.sym) return true;
  return false;
}

std::vector<Term> ScalarExpr::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back(Term{c, k});
  return out;
}

void ScalarExpr::add_term(const TermKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

ScalarExpr ScalarExpr::operator*(const ScalarExpr& o) const {
  ScalarExpr r;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      if (ka.sym && kb.sym) throw DomainError("product of two c_q symbols is not representable");
      TermKey k{ka.gamma_pow + kb.gamma_pow, ka.msq_pow + kb.msq_pow, ka.sym ? ka.sym : kb.sym};
      r.add_term(k, ca * cb);
    }
  }
  return r;
}

ScalarExpr ScalarExpr::times_gamma(int k) const {
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    TermKey nk = key;
    nk.gamma_pow += k;
    r.terms_.emplace(nk, c);
  }
  return r;
}

ScalarExpr ScalarExpr::times_msq(int j) const {
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    TermKey nk = key;
    nk.msq_pow += j;
    r.terms_.emplace(nk, c);
  }
  return r;
}

ScalarExpr ScalarExpr::d_gamma() const {
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    if (key.gamma_pow == 0) continue;
    TermKey nk = key;
    nk.gamma_pow -= 1;
    r.add_term(nk, c * key.gamma_pow);
  }
  return r;
}

ScalarExpr ScalarExpr::d_gamma_sq() const {
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    if (key.gamma_pow == 0) continue;
    TermKey nk = key;
    nk.gamma_pow -= 2;
    r.add_term(nk, c * frac(key.gamma_pow, 2));
  }
  return r;
}

ScalarExpr ScalarExpr::d_lambda(int times) const {
  if (times < 0) throw DomainError("negative derivative order");
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    if (!key.sym) {
      if (times == 0) r.add_term(key, c);
      continue;
    }
    TermKey nk = key;
    nk.sym->order += times;
    r.add_term(nk, c);
  }
  return r;
}

ScalarExpr ScalarExpr::integrate_gamma() const {
  ScalarExpr r;
  for (const auto& [key, c] : terms_) {
    if (key.gamma_pow == -1) throw DomainError("gamma^-1 has a logarithmic antiderivative");
    TermKey nk = key;
    nk.gamma_pow += 1;
    r.add_term(nk, c / Rational(nk.gamma_pow));
  }
  return r;
}

std::string ScalarExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    auto sep = [&] {
      if (wrote) os << "*";
      wrote = true;
    };
    if (mag != 1 || (k.gamma_pow == 0 && k.msq_pow == 0 && !k.sym)) {
      os << mag.get_str();
      wrote = true;
    }
    if (k.gamma_pow != 0) {
      sep();
      os << "gamma";
      if (k.gamma_pow != 1) os << "^" << k.gamma_pow;
    }
    if (k.msq_pow != 0) {
      sep();
      os << "(-m^2)";
      if (k.msq_pow != 1) os << "^" << k.msq_pow;
    }
    if (k.sym) {
      sep();
      if (k.sym->order > 0) os << "D" << k.sym->order;
      os << "c" << k.sym->q;
    }
  }
  return os.str();
}

double evaluate(const ScalarExpr& e, const EvalPoint& at, const FunctionRegistry& reg) {
  if (!(at.gamma > 0.0)) throw DomainError("evaluation requires gamma > 0");
  const double msq = -at.mass * at.mass;
  double sum = 0.0;
  for (const auto& [k, c] : e.terms()) {
    double v = c.get_d() * std::pow(at.gamma, k.gamma_pow) * std::pow(msq, k.msq_pow);
    if (k.sym) v *= reg.derivative(k.sym->q, k.sym->order, at.lambda);
    sum += v;
  }
  return sum;
}

Rational evaluate_exact(const ScalarExpr& e, const Rational& lambda, const Rational& gamma,
                        const Rational& mass_sq, const PolynomialRegistry& reg) {
  if (gamma <= 0) throw DomainError("evaluation requires gamma > 0");
  const Rational msq = -mass_sq;
  Rational sum = 0;
  for (const auto& [k, c] : e.terms()) {
    Rational v = c * pow(gamma, k.gamma_pow) * pow(msq, k.msq_pow);
    if (k.sym) v *= reg.derivative(k.sym->q, k.sym->order, lambda);
    sum += v;
  }
  return sum;
}

}  // namespace etclosure
