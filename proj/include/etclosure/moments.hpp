#pragma once

#include <utility>
#include <vector>

#include "etclosure/closure.hpp"
#include "etclosure/equilibrium.hpp"
#include "etclosure/state.hpp"
#include "etclosure/tensor_dense.hpp"

namespace etclosure {

// raw minus the equilibrium-shaped tensor with the same projection; even
// rank is treated as a lambda multiplier, odd rank as a mu multiplier.
template <class T>
SymTensor<T> make_deviation(const SymTensor<T>& raw, const T& mass_sq) {
  if (raw.rank() % 2 == 0) {
    return raw - equilibrium_lambda(project_lambda(raw, mass_sq), raw.rank(), mass_sq);
  }
  return raw - equilibrium_mu(project_mu(raw, mass_sq), raw.rank(), mass_sq);
}

// Covariant multiplier tensors of ranks M and N.
struct FullMultipliers {
  DenseSymTensor lambda;
  DenseSymTensor mu;
};

class MultiplierState {
 public:
  // Deviations must have zero projection (checked to 1e-12 of their size).
  MultiplierState(ThermoState base, DenseSymTensor lambda_dev, DenseSymTensor mu_dev, ClosureSpec spec);
  static MultiplierState at_equilibrium(ThermoState base, ClosureSpec spec);
  static MultiplierState from_full(const FullMultipliers& full, const ClosureSpec& spec,
                                   Statistics stats = Statistics::nondegenerate, PhysicalConstants consts = {});

  const ThermoState& base() const { return base_; }
  const DenseSymTensor& lambda_dev() const { return lambda_dev_; }
  const DenseSymTensor& mu_dev() const { return mu_dev_; }
  const ClosureSpec& spec() const { return spec_; }
  FullMultipliers full() const;

 private:
  ThermoState base_;
  DenseSymTensor lambda_dev_;
  DenseSymTensor mu_dev_;
  ClosureSpec spec_;
};

// sum over built orders of realize(C_{h,k}) . lambda_dev^h . mu_dev^k / (h! k!)
Vec4 delta_hprime(const ClosureTensorSet& set, const MultiplierState& state, const FunctionRegistry& reg);

// Contributions per order, for scaling checks.
std::vector<std::pair<std::pair<int, int>, Vec4>> delta_hprime_terms(const ClosureTensorSet& set,
                                                                     const MultiplierState& state,
                                                                     const FunctionRegistry& reg);

// Partial derivatives of the truncated series in the deviations, at fixed
// (lambda, mu_a): ranks M+1 and N+1.
std::pair<DenseSymTensor, DenseSymTensor> delta_moments(const ClosureTensorSet& set, const MultiplierState& state,
                                                        const FunctionRegistry& reg);

struct SymmetryReport {
  double lambda_residual = 0.0;  // relative to the largest derivative
  double mu_residual = 0.0;
  double lambda_scale = 0.0;
  double mu_scale = 0.0;
  double max() const { return lambda_residual > mu_residual ? lambda_residual : mu_residual; }
};

// Antisymmetric part of d(Delta h'^a)/d(multiplier component) by central
// differences on the full multipliers; step = rel_step * max|tensor|.
SymmetryReport symmetry_residual(const ClosureTensorSet& set, const MultiplierState& state,
                                 const FunctionRegistry& reg, double rel_step = 1e-6);

// Rank-r moment int f p^a1..p^ar d^3p/p^0 of the equilibrium distribution.
DenseSymTensor kinetic_moment(const ThermoState& state, int rank);

struct TraceLink {
  int rank = 0;                 // trace of rank r vs -m^2 times rank r-2
  double relative_residual = 0.0;
};

struct KineticMomentReport {
  DenseSymTensor A;  // rank M+1
  DenseSymTensor B;  // rank N+1
  std::vector<TraceLink> traces;
  double max_trace_residual = 0.0;
};

KineticMomentReport equilibrium_moments_with_traces(const ThermoState& state, const ClosureSpec& spec);

struct MomentSet {
  DenseSymTensor A;
  DenseSymTensor B;
  DenseSymTensor delta_A;
  DenseSymTensor delta_B;
  Vec4 hprime;
  Vec4 delta_hprime;
  int h_max = 0;
  int k_max = 0;
};

MomentSet moment_set(const ClosureTensorSet& set, const MultiplierState& state, const FunctionRegistry& reg);

}  // namespace etclosure
