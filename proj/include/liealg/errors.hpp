#pragma once

#include <stdexcept>
#include <string>

namespace liealg {

/// Operands of incompatible shape or ring.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The operation is not available over the requested coefficient ring.
class UnsupportedRingError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/**
 * An internal verification failed on inputs that satisfied every precondition.
 *
 * Raised when an identity that must hold for valid Lie structures (invariance of a
 * bracket span, bracket closure of a zero root space, ...) is observed to fail.
 * It always indicates a bug or an input that bypassed validation.
 */
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace liealg
