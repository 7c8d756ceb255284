#pragma once

#include <stdexcept>
#include <string>

namespace gramian {

// Base class for all errors raised by the closure library.
struct MomentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested Gram matrix order needs moments beyond those supplied.
struct OrderTooHigh : MomentError {
  using MomentError::MomentError;
};

// Cholesky factorization of a Gram matrix failed; the moment vector is
// non-realizable or degenerate.
struct NotPositiveDefinite : MomentError {
  using MomentError::MomentError;
};

// A quantity requires a moment of higher order than available.
struct AbsentMoment : MomentError {
  using MomentError::MomentError;
};

// Closure kind requires the opposite parity of M.
struct WrongParity : MomentError {
  using MomentError::MomentError;
};

// sigma_{n-1,n-1} vanished within tolerance; the moment vector sits on the
// realizability boundary.
struct ZeroDenominator : MomentError {
  using MomentError::MomentError;
};

// Central second moment is non-positive; no Maxwellian frame exists.
struct NegativeTemperature : MomentError {
  using MomentError::MomentError;
};

// Root sets passed to the interlacing check have incompatible sizes.
struct SizeMismatch : MomentError {
  using MomentError::MomentError;
};

// No nonnegative grid function can match the moment constraints.
struct Infeasible : MomentError {
  using MomentError::MomentError;
};

// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureFailure : MomentError {
  using MomentError::MomentError;
};

}  // namespace gramian
