#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "etclosure/f_family.hpp"
#include "etclosure/function_registry.hpp"
#include "etclosure/moments.hpp"
#include "etclosure/rational.hpp"
#include "etclosure/state.hpp"
#include "etclosure/tensor_dense.hpp"

// Brute-force references. Nothing here calls the canonical-storage tensor
// operations; components are handled on the full 4^n array.
namespace etclosure::oracle {

enum class Arithmetic { rational, floating };

struct OracleConfig {
  int max_rank = 6;
  Arithmetic arithmetic = Arithmetic::rational;
  double fd_step = 1e-4;  // relative to gamma
  std::uint64_t seed = 20240601;

  void validate() const;  // max_rank <= 8
};

// Full component array; index (i1..in) at sum_k i_k 4^(n-k), i.e. i1 is the
// most significant digit.
template <class T>
struct Array {
  int rank = 0;
  std::vector<T> comps;

  Array() = default;
  explicit Array(int n);
  T& at(const std::vector<int>& idx);
  const T& at(const std::vector<int>& idx) const;
};

using ExactArray = Array<Rational>;
using RealArray = Array<double>;

std::vector<int> digits(std::size_t flat, int rank);
std::size_t flatten(const std::vector<int>& idx);

// Literal average over all n! permutations of every component.
template <class T>
Array<T> brute_symmetrize(const Array<T>& raw, int max_rank = 8);

// symmetrized g x .. x g x mu x .. x mu, built as an outer product first
template <class T>
Array<T> brute_basis(int n, int s, const FourVector<T>& mu, int max_rank = 8);

// contraction of the last two slots with diag(-1,1,1,1)
template <class T>
Array<T> brute_trace(const Array<T>& raw);

// last slot against the covariant components of mu
template <class T>
Array<T> brute_mu_contract(const Array<T>& raw, const FourVector<T>& mu);

ExactArray brute_realize(const FFamilyElement& f, const ExactPoint& at, const PolynomialRegistry& reg, int max_rank = 8);
RealArray brute_realize(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg, int max_rank = 8);

// (n+1)-slot array, last slot = d/d mu_b by central differences with step
// rel_step * gamma; richardson combines steps h and h/2 to cancel the h^2 term.
RealArray fd_mu_derivative(const FFamilyElement& f, const ThermoState& state, const FunctionRegistry& reg,
                           double rel_step = 1e-4, bool richardson = true);

// Compare every full component of raw with the symmetric tensor's lookup.
template <class T>
bool equal_exact(const Array<T>& raw, const SymTensor<T>& t);
double max_abs_diff(const RealArray& raw, const DenseSymTensor& t);
double max_abs(const RealArray& raw);

template <class T>
Array<T> from_symmetric(const SymTensor<T>& t);

// Random inputs (seeded).
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Rational rational(int num_range, int den_max);
  // timelike future mu with rational gamma
  ExactPoint exact_point();
  ThermoState real_state(double gamma_min = 0.8, double gamma_max = 2.0);
  PolynomialRegistry polynomial_registry(int count, int degree = 3);
  // leading coefficient with random monomials; lower ones regenerated
  FFamilyElement family_element(int rank, int q_count, bool with_symbols = true);
  template <class T>
  Array<T> raw_array(int rank);
  // trace-free deviations with entries of size ~amplitude
  MultiplierState deviation_state(const ThermoState& base, const ClosureSpec& spec, double amplitude);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace etclosure::oracle
