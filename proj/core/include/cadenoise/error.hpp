#pragma once

#include <stdexcept>
#include <string>

namespace cadenoise {

// Base for every error raised by the library. Precondition violations on
// arguments (mismatched dimensions, out-of-range parameters) are reported as
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PgmErrorKind {
  kMissingFile,
  kUnsupportedFormat,
  kMalformedHeader,
  kUnsupportedMaxval,
  kTruncatedPayload,
  kIoFailure,
};

class PgmError : public Error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  PgmErrorKind kind() const noexcept { return kind_; }

 private:
  PgmErrorKind kind_;
};

// The normal matrix of a least-squares problem is singular or numerically so.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

// The optimizer produced a non-finite objective.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class WeightFileError : public Error {
 public:
  using Error::Error;
};

}  // namespace cadenoise
