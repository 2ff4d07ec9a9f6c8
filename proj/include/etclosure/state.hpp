#pragma once

#include <string>

#include "etclosure/rational.hpp"
#include "etclosure/scalar_expr.hpp"
#include "etclosure/tensor_dense.hpp"

namespace etclosure {

enum class Statistics { nondegenerate, fermion, boson };

Statistics parse_statistics(const std::string& name);  // mb | fd | be
std::string statistics_name(Statistics s);

struct PhysicalConstants {
  double k_B = 1.0;
  double h_planck = 1.0;
  double spin_weight = 1.0;
};

// Equilibrium evaluation point: lambda, mu (stored contravariant), mass.
class ThermoState {
 public:
  // Throws InvalidStateError unless mu is timelike with mu^0 > 0.
  ThermoState(double lambda, const Vec4& mu, double mass,
              Statistics stats = Statistics::nondegenerate, PhysicalConstants consts = {});

  // Rest-frame multiplier mu^a = (gamma, 0, 0, 0).
  static ThermoState at_rest(double lambda, double gamma, double mass,
                             Statistics stats = Statistics::nondegenerate, PhysicalConstants consts = {});

  double lambda() const { return lambda_; }
  double mass() const { return mass_; }
  double gamma() const { return gamma_; }
  Statistics statistics() const { return stats_; }
  const PhysicalConstants& constants() const { return consts_; }
  const Vec4& mu_upper() const { return mu_; }
  Vec4 mu_lower() const { return mu_.lowered(); }
  Vec4 velocity() const;  // u^a = mu^a / gamma
  EvalPoint eval_point() const { return EvalPoint{lambda_, gamma_, mass_}; }

 private:
  double lambda_;
  Vec4 mu_;
  double mass_;
  double gamma_;
  Statistics stats_;
  PhysicalConstants consts_;
};

// Exact evaluation point; gamma must be rational, so mu is built to make
// -mu.mu a perfect square.
struct ExactPoint {
  Rational lambda;
  ExactVec4 mu;  // contravariant
  Rational gamma;
  Rational mass_sq;

  // Checks gamma > 0, gamma^2 = -mu.mu, mu^0 > 0.
  void validate() const;
  ThermoState to_numeric() const;
};

}  // namespace etclosure
