#pragma once

#include <stdexcept>
#include <string>

namespace sisr {

// Base for all library errors. Subclasses map onto CLI exit codes:
// ConfigError -> 2, numerical failures -> 3, IoError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

struct BracketError : NumericalError {
    using NumericalError::NumericalError;
};

struct InfeasibleEvent : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateWeights : NumericalError {
    using NumericalError::NumericalError;
};

struct PopulationCollapse : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace sisr
