#pragma once

#include <stdexcept>
#include <string>

namespace symext {

// Bad input: not a state, out-of-range parameter, mismatched dimensions.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotAStateError : DomainError {
    using DomainError::DomainError;
};

struct DimensionError : DomainError {
    using DomainError::DomainError;
};

// A closed form hit a division by zero or an undefined point.
struct DegenerateInputError : DomainError {
    using DomainError::DomainError;
};

// Iterative method did not converge within its cap.
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction violated its own contract. Always a bug, never a property of the input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace symext
