// error.hpp — exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace rabi {

/// Raised when inputs violate a documented precondition (bad truncation,
/// unphysical parameters, malformed configuration).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation finishes but fails a numerical-quality check,
/// e.g. a truncation that has not converged.
class NumericalQualityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rabi
