#pragma once

#include <stdexcept>
#include <string>

namespace aiet {

/// Malformed or inconsistent user input (bad permutation, open path, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cross-check between two independent routes disagreed.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative numerics failed to converge or produced non-finite values.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aiet
