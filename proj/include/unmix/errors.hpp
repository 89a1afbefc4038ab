#pragma once

#include <stdexcept>

namespace unmix {

// Shape or size mismatch between operands, files, or configured dimensions.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A signal eigenvalue is too close to zero to whiten against.
struct SingularSubspaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Correlation requested against a zero-variance row.
struct UndefinedCorrelationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank-deficient matrix where full rank is required.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace unmix
