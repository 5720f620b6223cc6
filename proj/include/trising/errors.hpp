#pragma once

#include <stdexcept>
#include <string>

namespace trising {

// Base for every error raised by the library. The CLI maps UsageError and
// ConfigError to exit code 1, everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: empty factor lists, out-of-range subsystem indices, ...
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input violates a mathematical precondition (non-Hermitian, negative
// spectrum, unnormalized state).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (kappa <= 0, zeta outside (0,1], ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A spectral gap collapsed where a finite ratio was required.
class DegenerateGapError : public Error {
 public:
  using Error::Error;
};

}  // namespace trising
