#pragma once

#include <stdexcept>

namespace duality {

/// Operand lengths or matrix dimensions do not match.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A local operator that must be invertible is numerically singular.
struct SingularOperatorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parameters degenerate an otherwise well-defined construction.
struct DegenerateParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested system size exceeds the dense/state backend limits.
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Joint fixed space is empty or not one-dimensional.
struct FixedPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver failed to converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace duality
