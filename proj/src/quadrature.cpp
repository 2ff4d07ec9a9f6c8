#include "etclosure/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "etclosure/errors.hpp"

namespace etclosure {

QuadratureResult integrate_half_line(const std::function<double(double)>& g, double rel_tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  QuadratureResult r;
  try {
    r.value = integrator.integrate(g, 0.0, std::numeric_limits<double>::infinity(), rel_tol, &r.error, &r.l1);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("quadrature failed: ") + e.what());
  }
  if (!std::isfinite(r.value) || !std::isfinite(r.error)) {
    throw QuadratureError("quadrature did not converge (integrand does not decay)");
  }
  const double scale = std::max(r.l1, std::numeric_limits<double>::min());
  if (r.error > 1e4 * rel_tol * scale && r.error > 1e-300) {
    std::ostringstream os;
    os << "quadrature error estimate " << r.error << " exceeds tolerance for integral " << r.value;
    throw QuadratureError(os.str());
  }
  return r;
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double log_sinh(double x) {
  if (x < 1e-3) {
    // sinh x = x (1 + x^2/6 + x^4/120)
    const double x2 = x * x;
    return std::log(x) + std::log1p(x2 / 6.0 + x2 * x2 / 120.0);
  }
  return x + std::log(-std::expm1(-2.0 * x)) - std::log(2.0);
}

double bessel_k(int nu, double z) { return boost::math::cyl_bessel_k(nu, z); }

}  // namespace etclosure
