#pragma once

#include <stdexcept>
#include <string>

namespace mqdyn {

// Invalid run configuration (CLI exit status 2). Plain argument errors raised
// by the numerical modules use std::invalid_argument directly.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Eigensolver failure, NaN/Inf, or a violated strict-mode invariant (exit 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output could not be written (exit 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mqdyn
