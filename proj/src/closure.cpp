#include "etclosure/closure.hpp"

#include <string>

#include "etclosure/errors.hpp"
#include "etclosure/parallel.hpp"

namespace etclosure {

namespace {

Rational df_quot(int a, int b) { return double_factorial(a) / double_factorial(b); }

void check_order_args(int M, int N, int h, int k) {
  if (M < 0 || M % 2 != 0) throw DomainError("M must be even and non-negative (M=" + std::to_string(M) + ")");
  if (N < 1 || N % 2 != 1) throw DomainError("N must be odd and positive (N=" + std::to_string(N) + ")");
  if (h < 0 || k < 0) throw DomainError("orders must be non-negative");
  if (N == 1 && k != 0) throw DomainError("N = 1 admits only k = 0");
  if (M == 0 && h != 0) throw DomainError("M = 0 admits only h = 0");
}

}  // namespace

void ClosureSpec::validate() const {
  check_order_args(M, N, 0, 0);
  if (h_max < 0 || k_max < 0) throw DomainError("truncation orders must be non-negative");
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  for (auto [h, k] : orders()) {
    if (rank(h, k) > kClosureRankCap) {
      throw CapExceeded("closure tensor (h=" + std::to_string(h) + ", k=" + std::to_string(k) + ") has rank " +
                        std::to_string(rank(h, k)) + " > " + std::to_string(kClosureRankCap));
    }
  }
}

bool ClosureSpec::admissible(int h, int k) const {
  if (h < 0 || k < 0 || h > h_max || k > k_max) return false;
  if (N == 1 && k != 0) return false;
  if (M == 0 && h != 0) return false;
  return true;
}

std::vector<std::pair<int, int>> ClosureSpec::orders() const {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h <= h_max; ++h)
    for (int k = 0; k <= k_max; ++k)
      if (admissible(h, k)) out.emplace_back(h, k);
  return out;
}

int ClosureSpec::function_count() const {
  // c_q appears with q up to (Mh + k(N-1) - 2)/2
  int qmax = -1;
  for (auto [h, k] : orders()) qmax = std::max(qmax, (M * h + k * (N - 1) - 2) / 2);
  return qmax + 1;
}

std::shared_ptr<const FunctionRegistry> ClosureSpec::functions() const {
  if (registry) return registry;
  return std::make_shared<const FunctionRegistry>(FunctionRegistry::exponential(std::max(1, function_count())));
}

ScalarExpr closure_coeff_n1(int M, int h, int s) {
  check_order_args(M, 1, h, 0);
  if (M < 2) throw DomainError("closure_coeff_n1 needs M >= 2");
  const int n = M * h + 1;
  if (s < 0 || 2 * s > n) throw DomainError("s out of range for rank " + std::to_string(n));
  ScalarExpr out;
  if (h == 0) return out;
  const int L = M * h / 2;
  Rational pre = Rational(Integer(1) << static_cast<unsigned>(M * h - 2 * s));
  pre *= frac(factorial(L), factorial(s) * factorial(n - 2 * s));
  for (int q = 0; q <= (M * h - 2) / 2; ++q) {
    Rational c = pre * df_quot(M * h + 1, M * h - 2 * q - 2);
    c *= frac(factorial(q + 2 + L - s), factorial(q + 2));
    out += ScalarExpr::monomial(c, -6 - M * h + 2 * s - 2 * q, L, Symbol{q, h});
  }
  return out;
}

ScalarExpr closure_coeff(int M, int N, int h, int k, int s) {
  check_order_args(M, N, h, k);
  const int n = M * h + N * k + 1;
  if (s < 0 || 2 * s > n) throw DomainError("s out of range for rank " + std::to_string(n));
  ScalarExpr out;
  const int L = n / 2;
  const int hk = k / 2;
  const int base = M * h + k * (N - 1);
  Rational pre = Rational(Integer(1) << static_cast<unsigned>(2 * L + hk - 2 * s));
  pre *= frac(factorial(L), factorial(s) * factorial(n - 2 * s));
  const int msq = (N - 1) * k / 2 + M * h / 2;
  for (int q = 0; q <= (base - 2) / 2 && base >= 2; ++q) {
    Rational c = pre * df_quot(base + 1 + 2 * hk, base - 2 * q - 2);
    c *= frac(factorial(q + 2 + (M * h + (N + 1) * k) / 2 - s), factorial(q + 2));
    out += ScalarExpr::monomial(c, -6 - M * h - (N + 1) * k + 2 * s - 2 * q, msq, Symbol{q, h});
  }
  return out;
}

FFamilyElement build_closure_tensor(const ClosureSpec& spec, int h, int k) {
  check_order_args(spec.M, spec.N, h, k);
  const int n = spec.rank(h, k);
  if (n > kClosureRankCap) throw CapExceeded("closure tensor rank " + std::to_string(n) + " exceeds the cap");
  FFamilyElement f(n);
  for (int s = 0; s <= f.top(); ++s) {
    f.phi(s) = (spec.N == 1 && spec.M >= 2) ? closure_coeff_n1(spec.M, h, s) : closure_coeff(spec.M, spec.N, h, k, s);
  }
  return f;
}

const FFamilyElement& ClosureTensorSet::at(int h, int k) const {
  auto it = tensors.find({h, k});
  if (it == tensors.end()) {
    throw DomainError("closure order (h=" + std::to_string(h) + ", k=" + std::to_string(k) + ") not built");
  }
  return it->second;
}

ClosureTensorSet build_closure_set(const ClosureSpec& spec) {
  spec.validate();
  ClosureTensorSet set;
  set.M = spec.M;
  set.N = spec.N;
  set.h_max = spec.h_max;
  set.k_max = spec.k_max;
  const auto orders = spec.orders();
  std::vector<FFamilyElement> built(orders.size());
  parallel_for(orders.size(), [&](std::size_t i) { built[i] = build_closure_tensor(spec, orders[i].first, orders[i].second); });
  for (std::size_t i = 0; i < orders.size(); ++i) set.tensors.emplace(orders[i], std::move(built[i]));
  return set;
}

void mutate_closure_set(ClosureTensorSet& set, int K) {
  if (K <= 0) return;
  for (auto& [hk, f] : set.tensors) {
    if (f.is_zero()) continue;
    f.phi(0) *= Rational(1 + K);
    return;
  }
}

RecursiveClosure::RecursiveClosure(const ClosureSpec& spec) : spec_(spec) {
  check_order_args(spec.M, spec.N, 0, 0);
  if (spec.N < 3) throw DomainError("the E-tensor route needs N > 1");
}

const FFamilyElement& RecursiveClosure::base_E(int k) {
  if (k < 0) throw DomainError("negative order");
  const int r = (spec_.N - 1) / 2;
  if (base_.empty()) base_.emplace_back(1);
  while (static_cast<int>(base_.size()) <= k) {
    const int K = static_cast<int>(base_.size());  // building E_{0,K}
    FFamilyElement prev = base_.back().times_msq(r);
    std::vector<ScalarExpr> free;
    const int top = (spec_.N - 1) * K;
    for (int i = 0; i < r; ++i) {
      const int q = i + (K - 1) * r;
      free.push_back(ScalarExpr::monomial(df_quot(top + 1, top - 2 * q - 2), 0, r * K, Symbol{q, 0}));
    }
    base_.push_back(lift(prev, r, free));
  }
  return base_[static_cast<std::size_t>(k)];
}

FFamilyElement RecursiveClosure::E(int h, int k) {
  if (h < 0 || k < 0) throw DomainError("negative order");
  if (h == 0) return base_E(k);
  const int M = spec_.M;
  const int N = spec_.N;
  const FFamilyElement& x = base_E(k + M * h);
  const int traces = M * h * (N - 2) / 2;
  ScalarExpr lead = leading_after_traces(x, traces).times_msq(-traces).d_lambda(h);
  return FFamilyElement::from_leading(M * h + (N - 1) * k + 1, lead);
}

FFamilyElement RecursiveClosure::E_by_full_trace(int h, int k) {
  const int M = spec_.M;
  const int N = spec_.N;
  const int traces = M * h * (N - 2) / 2;
  return trace(base_E(k + M * h), traces).times_msq(-traces).d_lambda(h);
}

FFamilyElement RecursiveClosure::C(int h, int k) { return mu_derivative(E(h, k), k); }

FFamilyElement recursive_E(const ClosureSpec& spec, int h, int k) { return RecursiveClosure(spec).E(h, k); }

FFamilyElement derive_C_from_E(const ClosureSpec& spec, int h, int k) { return RecursiveClosure(spec).C(h, k); }

FFamilyElement recursive_C_n1(const ClosureSpec& spec, int h) {
  check_order_args(spec.M, 1, h, 0);
  if (spec.M < 2) throw DomainError("recursive_C_n1 needs M >= 2");
  const int M = spec.M;
  const int r = M / 2;
  FFamilyElement c(1);
  for (int j = 0; j < h; ++j) {  // C_j -> C_{j+1}
    std::vector<ScalarExpr> free;
    const int top = M * (j + 1);
    for (int i = 0; i < r; ++i) {
      const int q = M * j / 2 + i;
      free.push_back(ScalarExpr::monomial(df_quot(top + 1, top - 2 * q - 2), 0, top / 2, Symbol{q, j + 1}));
    }
    c = lift(c.d_lambda().times_msq(r), r, free);
  }
  return c;
}

ScalarExpr base_E_leading_closed_form(int N, int k) {
  check_order_args(0, N, 0, k);
  ScalarExpr out;
  const int t = (N - 1) * k;
  for (int q = 0; q <= (t - 2) / 2 && t >= 2; ++q) {
    Rational c = df_quot(t + 1, t - 2 * q) * Rational(t - 2 * q);
    out += ScalarExpr::monomial(c, -6 - 2 * q, (N - 1) * k / 2, Symbol{q, 0});
  }
  return out;
}

ScalarExpr E_leading_closed_form(int M, int N, int h, int k) {
  check_order_args(M, N, h, k);
  ScalarExpr out;
  const int t = (N - 1) * k + M * h;
  for (int q = 0; q <= (t - 2) / 2 && t >= 2; ++q) {
    out += ScalarExpr::monomial(df_quot(t + 1, t - 2 * q - 2), -6 - 2 * q, t / 2, Symbol{q, h});
  }
  return out;
}

bool CompatibilityReport::ok() const {
  for (const auto& r : lambda_residual)
    if (!r.is_zero()) return false;
  for (const auto& r : mu_residual)
    if (!r.is_zero()) return false;
  return true;
}

CompatibilityReport verify_compatibility(const ClosureTensorSet& set, int h, int k) {
  CompatibilityReport rep;
  rep.h = h;
  rep.k = k;
  if (!set.contains(h, k)) return rep;
  const FFamilyElement& c = set.at(h, k);
  if (set.M > 0 && set.contains(h + 1, k)) {
    FFamilyElement lhs = trace(set.at(h + 1, k), set.M / 2);
    FFamilyElement rhs = c.d_lambda().times_msq(set.M / 2);
    rep.lambda_checked = true;
    rep.lambda_residual = (lhs - rhs).coeffs();
  }
  if (set.N > 1 && set.contains(h, k + 1)) {
    const int r = (set.N - 1) / 2;
    FFamilyElement lhs = trace(set.at(h, k + 1), r);
    FFamilyElement rhs = mu_derivative(c).times_msq(r);
    rep.mu_checked = true;
    rep.mu_residual = (lhs - rhs).coeffs();
  }
  return rep;
}

}  // namespace etclosure
