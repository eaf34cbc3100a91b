#pragma once

#include <stdexcept>
#include <string>

namespace adacur {

/// Non-finite or structurally malformed input data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter outside its admissible range (rank too large, dimension
/// mismatch, infeasible sample counts, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A condition the theory says cannot happen; signals a numerical bug.
class InternalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system or parse failure while reading/writing external data.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace adacur
