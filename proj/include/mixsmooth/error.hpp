#pragma once

#include <stdexcept>

namespace mixsmooth {

/// Arguments violate the preconditions of an operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced values that cannot be trusted (non-finite, failed fit).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixsmooth
