#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pdm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the region where an operation is defined
/// (off a branch cut, outside a strip, outside a potential's interval).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::complex<double> where)
      : Error(what + " at (" + std::to_string(where.real()) + ", " +
              std::to_string(where.imag()) + ")"),
        where_(where) {}
  explicit DomainError(const std::string& what) : Error(what) {}

  std::complex<double> where() const noexcept { return where_; }

 private:
  std::complex<double> where_{};
};

/// Division by zero, a pole, or a vanishing derivative of a map.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Request exceeds a documented capacity limit (Hermite order, quantum numbers).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Fewer bound states exist than were requested.
class CountError : public Error {
 public:
  CountError(const std::string& what, int available)
      : Error(what), available_(available) {}
  int available() const noexcept { return available_; }

 private:
  int available_ = 0;
};

/// A grid does not cover enough of a state's support.
class ExtentError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters or malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdm
