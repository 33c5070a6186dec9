#pragma once

#include <stdexcept>
#include <string>

namespace sphereflock {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two positions are (numerically) antipodal; the transport operator is
/// singular there and the model is not well posed.
class AntipodalPair : public Error {
 public:
  using Error::Error;
};

class NotTangent : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// An ensemble violates the unit-sphere or tangency constraint.
class InvalidEnsemble : public Error {
 public:
  using Error::Error;
};

class InvalidKernel : public Error {
 public:
  using Error::Error;
};

class NonPositiveValue : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sphereflock
