#pragma once

#include <stdexcept>
#include <string>

namespace peridyn {

/// Invalid physical or numerical parameter (non-positive modulus, bad dimension, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bond evaluated outside the horizon of a bounded-support model.
class OutOfHorizonError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Zero-length reference bond.
class DegenerateBondError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite value produced while evaluating forces or advancing a state.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form oracle evaluated at a singular point (e.g. on a crack face).
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration file or flag rejected. The message lists every offender.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace peridyn
