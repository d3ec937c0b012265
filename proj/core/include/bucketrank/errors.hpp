#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bucketrank {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects over different item counts were combined.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of its type (bad permutation, bad shape...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An operation would need to enumerate more objects than the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The input is valid but outside the domain where the operation is defined.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A pairwise probability was needed for a pair that has no observation.
class UnobservedPair : public PreconditionError {
 public:
  UnobservedPair(std::size_t i, std::size_t j)
      : PreconditionError("pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") has no observations"),
        first_(i),
        second_(j) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bucketrank
