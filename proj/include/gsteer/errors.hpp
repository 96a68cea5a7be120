#pragma once

#include <stdexcept>
#include <string>

namespace gsteer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not agree with each other or with a partition.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed: non-finite entries, a non-symmetric matrix where
/// a symmetric one is required, parameters outside their admissible range.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// A block that must be inverted is singular and no pseudo-inverse was allowed.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// An operation was handed an object that violates its physical validity
/// condition (an invalid state, a channel that is not completely positive).
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}

  /// Smallest eigenvalue of the violated positivity condition.
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace gsteer
