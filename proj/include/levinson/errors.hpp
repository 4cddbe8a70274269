#pragma once

#include <stdexcept>
#include <string>

namespace levinson {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x < 0, E > 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Malformed potential parameters (x0 < a, negative widths, bad table, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

// Engine or solver settings that cannot be used (non-positive step, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

// b < -1/4: the x^-2 tail supports infinitely many bound states.
class InfiniteSpectrumError : public Error {
public:
  using Error::Error;
};

// Potential classified as decaying slower than x^-2, or a tail case the
// theorem check does not cover (critical tails). Verification refuses these.
class RefusedError : public Error {
public:
  using Error::Error;
};

// Operation requires a cutoff potential (or, for tail routines, an x^-2 tail).
class TailModeError : public Error {
public:
  using Error::Error;
};

// dA/dE requested where psi(x0) = 0.
class NodeDerivativeError : public Error {
public:
  using Error::Error;
};

// Small-k expansion requested where A(0, lambda) is infinite.
class ExpansionUndefinedError : public Error {
public:
  using Error::Error;
};

// Numerical-resolution failures: the answer exists but the configured
// grids could not pin it down.
class ResolutionError : public Error {
public:
  using Error::Error;
};

class BranchTrackingError : public ResolutionError {
public:
  using ResolutionError::ResolutionError;
};

class LimitUnresolvedError : public ResolutionError {
public:
  using ResolutionError::ResolutionError;
};

class SweepUnresolvedError : public ResolutionError {
public:
  using ResolutionError::ResolutionError;
};

class TailMatchError : public ResolutionError {
public:
  using ResolutionError::ResolutionError;
};

// Two independent routes to the same integer disagreed. Always a numerical
// defect, never a physics outcome.
class InternalConsistencyError : public Error {
public:
  using Error::Error;
};

} // namespace levinson
