#pragma once

#include <stdexcept>
#include <string>

namespace twmr {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter or state violated a documented invariant.
struct ValidationError : Error {
    using Error::Error;
};

// The requested solve has at least one growing eigenmode.
struct InstabilityError : Error {
    using Error::Error;
};

// The Liouvillian kernel is empty or has dimension larger than one.
struct DegenerateSteadyStateError : Error {
    using Error::Error;
};

// A linear system that must be invertible is singular.
struct SingularMatrixError : Error {
    using Error::Error;
};

// The nonclassicality witness is undefined (vanishing denominator).
struct UndefinedWitnessError : Error {
    using Error::Error;
};

// Truncated-Fock results failed the convergence criterion.
struct NonConvergenceError : Error {
    using Error::Error;
};

// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

} // namespace twmr
