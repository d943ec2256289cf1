#pragma once

#include <stdexcept>
#include <string>

namespace hypbound {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates the invariant of its type (e.g. a point outside its model).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Inputs are individually valid but the operation is undefined for them.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A result failed a post-condition check (e.g. an image escaped its model).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical procedure failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: unknown family, bad CLI argument, etc.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypbound
