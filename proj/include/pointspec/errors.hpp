#pragma once

#include <stdexcept>
#include <string>

namespace pointspec {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters: invalid ranges, mismatched model/coupling, malformed systems.
struct ConfigError : Error {
    using Error::Error;
};

// Genuine poles of the coupling map (2a + c = 0, or c_a = 2a).
struct SingularCouplingError : ConfigError {
    using ConfigError::ConfigError;
};

// Operation asked for a parity sector the model does not live in.
struct SectorError : ConfigError {
    using ConfigError::ConfigError;
};

// Asymptotic-regime precondition violated (e.g. |c/(2a)| >= 1/2).
struct RegimeError : ConfigError {
    using ConfigError::ConfigError;
};

// Iterative solver failed to reach tolerance within its budget.
struct ConvergenceError : Error {
    using Error::Error;
};

// Series cutoff too small for the requested asymptotic claim.
struct CutoffError : Error {
    using Error::Error;
};

// Filesystem trouble while emitting results.
struct IoError : Error {
    using Error::Error;
};

} // namespace pointspec
