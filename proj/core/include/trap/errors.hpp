// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace trap {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration or precondition violation.
/// Mapped to exit code 2 by the CLI.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its tolerance. Carries the error
/// estimate it did achieve. Mapped to exit code 3 by the CLI.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : Error(what), achieved_(achieved_error) {}
  double achieved_error() const { return achieved_; }

 private:
  double achieved_ = 0.0;
};

/// Requested a double-well quantity while b <= 0 (single-well regime).
class SingleWellError : public Error {
 public:
  using Error::Error;
};

/// Requested a trapped quantity while a <= 0 (no quartic confinement).
class UnconfinedError : public Error {
 public:
  using Error::Error;
};

}  // namespace trap
