#pragma once

#include <stdexcept>
#include <string>

namespace qsync {

/// Failure of a numerical procedure (solver, integrator, closure).
/// The CLI maps these to exit code 1; malformed input maps to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian null space is not one-dimensional at the configured
/// threshold, so the steady state is not unique.
class DegenerateSteadyStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The null vector of the Liouvillian has (numerically) zero trace and
/// cannot be normalized to a state.
class TracelessNullVectorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Fixed-step integration produced non-finite entries.
class IntegrationInstabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Lie-closure iteration exceeded the requested dimension cap.
class ClosureOverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid or unreadable configuration input (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsync
