#pragma once

#include <stdexcept>
#include <string>

namespace qwmp {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Division by a zero scalar or quaternion.
struct ZeroDivision : Error {
  using Error::Error;
};

/// Operand shapes are incompatible.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Row, column, or anchor index outside the matrix.
struct IndexOutOfRange : Error {
  using Error::Error;
};

/// Combinatorial kernel asked to enumerate beyond the configured size cap.
struct SizeCapExceeded : Error {
  using Error::Error;
};

/// Matrix required to be Hermitian is not.
struct NotHermitian : Error {
  using Error::Error;
};

/// Matrix required to be Hermitian positive definite is not.
struct NotPositiveDefinite : Error {
  using Error::Error;
};

/// Square matrix has no inverse.
struct SingularMatrix : Error {
  using Error::Error;
};

/// Minor order lies outside [1, n] or exceeds the size cap.
struct RankOutOfRange : Error {
  using Error::Error;
};

/// Complex matrix does not carry the block symmetry of an embedded
/// quaternion matrix.
struct NotInImage : Error {
  using Error::Error;
};

/// Eigenvalues of the embedded complex matrix could not be grouped into
/// the doubled pairs an embedding must produce.
struct EmbeddingPairingFailure : Error {
  using Error::Error;
};

/// Neither weighted Gram matrix is Hermitian where the chosen formula
/// requires it.
struct NotHermitianSharp : Error {
  using Error::Error;
};

/// Determinantal denominator vanished (rank and minor order disagree).
struct ZeroDenominator : Error {
  using Error::Error;
};

/// Regularization schedule contains no points.
struct ScheduleEmpty : Error {
  using Error::Error;
};

/// Successive regularized iterates stopped approaching a limit.
struct NonConvergence : Error {
  using Error::Error;
};

/// A computed pseudoinverse failed its defining equations.
struct AxiomViolation : Error {
  using Error::Error;
};

/// Operation needs square roots or limits the exact backend cannot supply.
struct BackendUnsupported : Error {
  using Error::Error;
};

/// Malformed matrix file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qwmp
