// errors.hpp — domain error hierarchy shared by all modules
#pragma once

#include <stdexcept>

namespace thermo {

// Recoverable domain errors. The CLI maps these to exit code 3,
// I/O and parse failures to exit code 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBracketError : DomainError {
    using DomainError::DomainError;
};

struct AbsorbingStateError : DomainError {
    using DomainError::DomainError;
};

struct TrajectoryOverflowError : DomainError {
    using DomainError::DomainError;
};

struct PartitionMismatchError : DomainError {
    using DomainError::DomainError;
};

struct NoJumpsError : DomainError {
    using DomainError::DomainError;
};

struct InvalidRootError : DomainError {
    using DomainError::DomainError;
};

struct SingularPopulationError : DomainError {
    using DomainError::DomainError;
};

} // namespace thermo
