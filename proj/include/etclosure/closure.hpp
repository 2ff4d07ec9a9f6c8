#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "etclosure/f_family.hpp"
#include "etclosure/function_registry.hpp"
#include "etclosure/scalar_expr.hpp"

namespace etclosure {

inline constexpr int kClosureRankCap = 16;

struct ClosureSpec {
  int M = 2;
  int N = 1;
  int h_max = 2;
  int k_max = 2;
  double mass = 1.0;
  std::shared_ptr<const FunctionRegistry> registry;

  // DomainError on parity/range problems, CapExceeded past the rank cap.
  void validate() const;
  int rank(int h, int k) const { return M * h + N * k + 1; }
  // N = 1 forces k = 0 and M = 0 forces h = 0.
  bool admissible(int h, int k) const;
  std::vector<std::pair<int, int>> orders() const;
  // number of distinct c_q the tensors up to (h_max, k_max) reference
  int function_count() const;
  // registry, or the default exponential family when unset
  std::shared_ptr<const FunctionRegistry> functions() const;
};

// Coefficient of Y^{Mh+1}_s in C_h for N = 1.
ScalarExpr closure_coeff_n1(int M, int h, int s);
// Coefficient of Y^{Mh+Nk+1}_s in C_{h,k}.
ScalarExpr closure_coeff(int M, int N, int h, int k, int s);

FFamilyElement build_closure_tensor(const ClosureSpec& spec, int h, int k);

struct ClosureTensorSet {
  int M = 0;
  int N = 1;
  int h_max = 0;
  int k_max = 0;
  std::map<std::pair<int, int>, FFamilyElement> tensors;

  bool contains(int h, int k) const { return tensors.count({h, k}) != 0; }
  const FFamilyElement& at(int h, int k) const;
};

ClosureTensorSet build_closure_set(const ClosureSpec& spec);

// Scales the lowest coefficient of the first nonzero tensor by (1 + K);
// negative control for the verification suites.
void mutate_closure_set(ClosureTensorSet& set, int K);

// Independent construction through the auxiliary E tensors (N > 1).
class RecursiveClosure {
 public:
  explicit RecursiveClosure(const ClosureSpec& spec);

  const FFamilyElement& base_E(int k);  // E_{0,k}
  FFamilyElement E(int h, int k);
  // same, with the full iterated trace instead of the leading-term shortcut
  FFamilyElement E_by_full_trace(int h, int k);
  FFamilyElement C(int h, int k);  // k-fold mu derivative of E_{h,k}

 private:
  ClosureSpec spec_;
  std::vector<FFamilyElement> base_;
};

FFamilyElement recursive_E(const ClosureSpec& spec, int h, int k);
FFamilyElement derive_C_from_E(const ClosureSpec& spec, int h, int k);

// N = 1 route: C_{h+1} lifted from the lambda derivative of C_h.
FFamilyElement recursive_C_n1(const ClosureSpec& spec, int h);

// Closed form of the leading coefficient of E_{0,k}.
ScalarExpr base_E_leading_closed_form(int N, int k);
// Closed form of the leading coefficient of E_{h,k}.
ScalarExpr E_leading_closed_form(int M, int N, int h, int k);

struct CompatibilityReport {
  int h = 0;
  int k = 0;
  bool lambda_checked = false;
  bool mu_checked = false;
  std::vector<ScalarExpr> lambda_residual;
  std::vector<ScalarExpr> mu_residual;

  bool ok() const;
};

// Trace of C_{h+1,k} against the lambda derivative of C_{h,k}, and trace of
// C_{h,k+1} against the mu derivative of C_{h,k}, where both sides exist.
CompatibilityReport verify_compatibility(const ClosureTensorSet& set, int h, int k);

}  // namespace etclosure
