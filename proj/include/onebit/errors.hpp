#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two inputs live in different ambient dimensions (or patterns differ in length).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A dimension, size, or count argument is outside its admissible range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Geodesic endpoints coincide or are antipodal.
class DegenerateGeodesic : public Error {
 public:
  using Error::Error;
};

/// A hyperplane normal does not separate the two endpoints it was asked about.
class NotSeparating : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an ensemble of the wrong kind (uniform vs gaussian).
class KindError : public Error {
 public:
  using Error::Error;
};

/// Factorization or other numerical routine failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested enumeration is too large to carry out exhaustively.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation-specific precondition (e.g. minimum separation).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace onebit
