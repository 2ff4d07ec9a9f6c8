#pragma once

#include <cmath>
#include <random>

#include "etclosure/function_registry.hpp"
#include "etclosure/scalar_expr.hpp"

namespace testing {

inline etclosure::Rational q(long a, long b = 1) { return etclosure::frac(a, b); }

// c_q(lambda) = lambda, derivatives exact
inline etclosure::FunctionRegistry identity_registry(int count) {
  etclosure::FunctionRegistry reg;
  for (int i = 0; i < count; ++i) {
    reg.set(i, [](double l, int order) { return order == 0 ? l : (order == 1 ? 1.0 : 0.0); });
  }
  return reg;
}

inline bool close(double a, double b, double rel, double floor = 1e-300) {
  return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), floor});
}

}  // namespace testing
