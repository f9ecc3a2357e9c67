#pragma once

#include <stdexcept>
#include <string>

namespace wblab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field or intermediate quantity contained NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Non-cavitation failed: 1 + eps*eta <= 0 somewhere, so the energy weight is not coercive.
class NonCoerciveError : public Error {
 public:
  using Error::Error;
};

/// A 2D velocity field violated the curl-free condition beyond tolerance.
class CurlError : public Error {
 public:
  using Error::Error;
};

/// Propagated data would reach the periodic image before the end of the time window.
class WrapAroundError : public Error {
 public:
  WrapAroundError(const std::string& what, double required_length)
      : Error(what), required_length_(required_length) {}
  double required_length() const { return required_length_; }

 private:
  double required_length_;
};

/// Invalid configuration: unknown key, type mismatch, or violated invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wblab
