#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chartlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different ground sets.
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// A point or index lies outside the ground set.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (non-inverse semigroup,
/// invalid partition, truncated tree, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A required parameter is missing or malformed.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Text or JSON input could not be parsed or violates a type invariant.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (enumeration size, closure order, period, depth) was hit.
/// `partial` carries how far the computation got before stopping.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t partial = 0)
      : Error(what), partial_(partial) {}
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// An internal self-check failed; always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chartlab
