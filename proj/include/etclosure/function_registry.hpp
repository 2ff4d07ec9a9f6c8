#pragma once

#include <functional>
#include <map>
#include <vector>

#include "etclosure/rational.hpp"

namespace etclosure {

// Supplies the arbitrary functions c_q(lambda) and their lambda-derivatives.
class FunctionRegistry {
 public:
  // f(lambda, order) returns the order-th derivative.
  using Function = std::function<double(double lambda, int order)>;

  FunctionRegistry() = default;

  void set(int q, Function f, int max_order = 16);
  bool contains(int q) const { return fns_.count(q) != 0; }
  int max_order(int q) const;
  double derivative(int q, int order, double lambda) const;

  // c_q(lambda) = exp(-lambda/(q+1)) * (1 + q/4), q = 0..count-1.
  static FunctionRegistry exponential(int count, int max_order = 16);

 private:
  struct Entry {
    Function f;
    int max_order;
  };
  std::map<int, Entry> fns_;
};

// Polynomial instantiation of the c_q, for exact evaluation.
class PolynomialRegistry {
 public:
  // coeffs[i] multiplies lambda^i.
  void set(int q, std::vector<Rational> coeffs);
  bool contains(int q) const { return polys_.count(q) != 0; }
  Rational derivative(int q, int order, const Rational& lambda) const;

  FunctionRegistry to_numeric() const;

 private:
  std::map<int, std::vector<Rational>> polys_;
};

}  // namespace etclosure
