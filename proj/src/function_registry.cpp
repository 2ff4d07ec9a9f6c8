#include "etclosure/function_registry.hpp"

#include <cmath>
#include <string>

#include "etclosure/errors.hpp"

namespace etclosure {

void FunctionRegistry::set(int q, Function f, int max_order) {
  if (q < 0) throw DomainError("function index must be non-negative");
  fns_[q] = Entry{std::move(f), max_order};
}

int FunctionRegistry::max_order(int q) const {
  auto it = fns_.find(q);
  if (it == fns_.end()) throw MissingSymbolError("no function c_" + std::to_string(q));
  return it->second.max_order;
}

double FunctionRegistry::derivative(int q, int order, double lambda) const {
  auto it = fns_.find(q);
  if (it == fns_.end()) throw MissingSymbolError("no function c_" + std::to_string(q));
  if (order < 0 || order > it->second.max_order) {
    throw DomainError("derivative order " + std::to_string(order) + " of c_" +
                      std::to_string(q) + " exceeds the registered bound");
  }
  return it->second.f(lambda, order);
}

FunctionRegistry FunctionRegistry::exponential(int count, int max_order) {
  FunctionRegistry reg;
  for (int q = 0; q < count; ++q) {
    const double a = -1.0 / (q + 1);
    const double amp = 1.0 + q / 4.0;
    reg.set(
        q, [a, amp](double lambda, int order) { return amp * std::pow(a, order) * std::exp(a * lambda); },
        max_order);
  }
  return reg;
}

void PolynomialRegistry::set(int q, std::vector<Rational> coeffs) {
  if (q < 0) throw DomainError("function index must be non-negative");
  polys_[q] = std::move(coeffs);
}

Rational PolynomialRegistry::derivative(int q, int order, const Rational& lambda) const {
  auto it = polys_.find(q);
  if (it == polys_.end()) throw MissingSymbolError("no polynomial c_" + std::to_string(q));
  const auto& c = it->second;
  Rational sum = 0;
  Rational lp = 1;
  for (std::size_t i = static_cast<std::size_t>(order); i < c.size(); ++i) {
    // falling factorial i (i-1) ... (i-order+1)
    Integer ff = 1;
    for (int j = 0; j < order; ++j) ff *= static_cast<long>(i) - j;
    sum += c[i] * ff * lp;
    lp *= lambda;
  }
  return sum;
}

FunctionRegistry PolynomialRegistry::to_numeric() const {
  FunctionRegistry reg;
  for (const auto& [q, c] : polys_) {
    std::vector<double> d;
    for (const auto& x : c) d.push_back(x.get_d());
    reg.set(q, [d](double lambda, int order) {
      double sum = 0.0;
      double lp = 1.0;
      for (std::size_t i = static_cast<std::size_t>(order); i < d.size(); ++i) {
        double ff = 1.0;
        for (int j = 0; j < order; ++j) ff *= static_cast<double>(i) - j;
        sum += d[i] * ff * lp;
        lp *= lambda;
      }
      return sum;
    });
  }
  return reg;
}

}  // namespace etclosure
