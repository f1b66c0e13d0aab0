#pragma once

#include <stdexcept>
#include <string>

namespace sr {

// Base for every error the library raises on purpose. kind() is the short
// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DomainError"; }
};

class InfeasibleLink : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InfeasibleLink"; }
};

class ExplosionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ExplosionError"; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NumericalError"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ConfigError"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "IoError"; }
};

}  // namespace sr
