#pragma once

#include <stdexcept>
#include <string>

namespace rmspec {

/// Malformed input: bad word, unknown family, out-of-range order.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured cap (word length, volume dimension, enumeration budget)
/// would be exceeded.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics failed to converge.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmspec
