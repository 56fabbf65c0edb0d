#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario or configuration values that violate a documented constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes that do not agree with each other or with the configuration.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A sample lookup fell outside the available stream.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// H[k] H[k]^H is not invertible on a used subcarrier.
class SingularChannelError : public Error {
 public:
  SingularChannelError(int subcarrier, const std::string& what)
      : Error(what), subcarrier_(subcarrier) {}
  int subcarrier() const noexcept { return subcarrier_; }

 private:
  int subcarrier_;
};

}  // namespace onebit
