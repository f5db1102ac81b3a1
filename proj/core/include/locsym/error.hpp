#pragma once

#include <stdexcept>
#include <string>

namespace locsym {

// Malformed user input: bad file, dimension mismatch, violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well-formed but outside what the engine can decide
// (non-linearizable pivot, unknown algebra for a hardcoded schedule, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Floating-point kernel could not meet its accuracy budget.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace locsym
