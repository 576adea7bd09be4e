#pragma once

#include <stdexcept>
#include <string>

namespace wxfleet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input that cannot be parsed (JSON, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-formed value that violates a documented invariant. `field()` names
/// the first offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// CSV/JSON file whose columns do not match the documented schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Numerical estimation failure (rank deficiency, separation, empty support...).
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// File-system failure; the message always carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wxfleet
