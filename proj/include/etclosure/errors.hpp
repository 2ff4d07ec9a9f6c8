#pragma once

#include <stdexcept>
#include <string>

namespace etclosure {

// Bad argument: rank, parity, index range, arity.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Zero factor inside a telescoping double-factorial ratio.
class SingularRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A lift was requested for a leading power the construction excludes.
class LiftHypothesisError : public SingularRatioError {
 public:
  using SingularRatioError::SingularRatioError;
};

class CharacteristicViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MissingSymbolError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Multiplier vector not timelike and future directed.
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace etclosure
