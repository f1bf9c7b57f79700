#pragma once

#include <stdexcept>

namespace horoaf {

// Shared error taxonomy. Each class marks a distinct recoverable contract
// violation; callers that probe shapes (optimizers, samplers) catch these
// individually and treat the point as infeasible.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Support-function Hessian not positive definite at some node.
struct NonConvexError : Error {
  using Error::Error;
};

// Surface leaves the unit ball (the model domain).
struct OutOfBallError : Error {
  using Error::Error;
};

// Induced metric degenerates (vanishing radial function or metric determinant).
struct DegenerateError : Error {
  using Error::Error;
};

struct MismatchedFramesError : Error {
  using Error::Error;
};

struct UnknownInequalityError : Error {
  using Error::Error;
};

// Inequality requested with a parity/range its statement does not cover.
struct BadParityError : Error {
  using Error::Error;
};

struct WrongDimensionError : Error {
  using Error::Error;
};

struct NonUniformGridError : Error {
  using Error::Error;
};

struct NoFeasiblePointError : Error {
  using Error::Error;
};

struct BudgetExhaustedError : Error {
  using Error::Error;
};

// Doubled-resolution re-check flipped one of the certificate inequalities.
struct CertificateUnstableError : Error {
  using Error::Error;
};

}  // namespace horoaf
