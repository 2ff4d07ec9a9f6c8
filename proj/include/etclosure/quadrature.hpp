#pragma once

#include <functional>

namespace etclosure {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Integral of g over [0, inf) by double-exponential quadrature. Throws
// QuadratureError on non-finite results or when the error estimate misses
// the requested relative tolerance by more than a factor 1e4.
QuadratureResult integrate_half_line(const std::function<double(double)>& g, double rel_tol = 1e-13);

double log_cosh(double x);
double log_sinh(double x);  // x > 0

// Modified Bessel function K_nu(z), z > 0.
double bessel_k(int nu, double z);

}  // namespace etclosure
