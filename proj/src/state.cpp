#include "etclosure/state.hpp"

#include <cmath>

#include "etclosure/errors.hpp"

namespace etclosure {

Statistics parse_statistics(const std::string& name) {
  if (name == "mb") return Statistics::nondegenerate;
  if (name == "fd") return Statistics::fermion;
  if (name == "be") return Statistics::boson;
  throw DomainError("unknown statistics '" + name + "' (expected mb, fd or be)");
}

std::string statistics_name(Statistics s) {
  switch (s) {
    case Statistics::nondegenerate: return "mb";
    case Statistics::fermion: return "fd";
    case Statistics::boson: return "be";
  }
  return "?";
}

ThermoState::ThermoState(double lambda, const Vec4& mu, double mass, Statistics stats,
                         PhysicalConstants consts)
    : lambda_(lambda), mu_(mu.raised()), mass_(mass), gamma_(0.0), stats_(stats), consts_(consts) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidStateError("mass must be positive");
  const double g2 = -mu_.norm_sq();
  if (!(g2 > 0.0)) throw InvalidStateError("mu is not timelike (mu.mu >= 0)");
  if (!(mu_[0] > 0.0)) throw InvalidStateError("mu is not future directed (mu^0 <= 0)");
  gamma_ = std::sqrt(g2);
}

ThermoState ThermoState::at_rest(double lambda, double gamma, double mass, Statistics stats,
                                 PhysicalConstants consts) {
  return ThermoState(lambda, Vec4::upper(gamma, 0.0, 0.0, 0.0), mass, stats, consts);
}

Vec4 ThermoState::velocity() const {
  Vec4 u = mu_;
  for (int a = 0; a < 4; ++a) u[a] /= gamma_;
  return u;
}

void ExactPoint::validate() const {
  if (mu.variance != Variance::contravariant) throw InvalidStateError("exact point stores mu^a");
  if (gamma <= 0) throw InvalidStateError("gamma must be positive");
  if (mu[0] <= 0) throw InvalidStateError("mu is not future directed");
  if (gamma * gamma != -mu.norm_sq()) throw InvalidStateError("gamma^2 != -mu.mu");
  if (mass_sq <= 0) throw InvalidStateError("mass must be positive");
}

ThermoState ExactPoint::to_numeric() const {
  return ThermoState(lambda.get_d(), Vec4::upper(mu[0].get_d(), mu[1].get_d(), mu[2].get_d(), mu[3].get_d()),
                     std::sqrt(mass_sq.get_d()));
}

}  // namespace etclosure
