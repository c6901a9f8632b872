#pragma once

#include <stdexcept>

namespace sff {

/// Invalid matrix/Hilbert-space dimensions, shape mismatches, size budgets.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad user-facing configuration (unknown distribution kind, missing or
/// contradictory fields).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure at run time (eigensolver non-convergence, evaluation
/// in an undefined regime).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure, message carries the offending path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sff
