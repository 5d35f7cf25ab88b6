#pragma once

#include <stdexcept>
#include <string>

namespace pcong {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonInvertible : Error { using Error::Error; };
struct CapacityExceeded : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };
struct NonUnitLeadingCoefficient : Error { using Error::Error; };
struct EmptyResult : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct ModulusIncompatible : Error { using Error::Error; };
struct ExponentTooLarge : Error { using Error::Error; };
struct InsufficientSupport : Error { using Error::Error; };
struct ConditionPrimeNotCoprime : Error { using Error::Error; };
struct EigenRelationBroken : Error { using Error::Error; };
struct NotDiagonalShape : Error { using Error::Error; };
struct DecompositionFailed : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };

} // namespace pcong
