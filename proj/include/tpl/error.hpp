#pragma once

#include <stdexcept>
#include <string>

namespace tpl {

// Exception hierarchy. The CLI maps these onto exit codes 1, 2 and 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed config, unknown keys, unparsable values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (p | h, split prime, composite q, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computed object failed its certificate (mass formula, discriminant,
/// eigenspace dimension, arithmetic overflow). Signals a bug or a bound
/// that was too small, never bad input.
class CertificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace tpl
