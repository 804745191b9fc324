#pragma once

#include <stdexcept>
#include <string>

namespace alc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside the supported mathematical domain (p = 2, ramified p, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class PrecisionUnderflow : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

// Raised when a division that must be exact is not; always an internal bug.
class ExactDivisionFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace alc
