#pragma once

#include <stdexcept>
#include <string>

namespace ellgen {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient rings (e.g. NilPoly over different algebras).
struct IncompatibleRing : Error {
  using Error::Error;
};

/// Leading coefficient (or constant term) is not a unit.
struct NotInvertible : Error {
  using Error::Error;
};

/// A coefficient at or beyond the truncation order was requested.
struct TruncationError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

/// Model data is inconsistent or underspecified.
struct ModelError : Error {
  using Error::Error;
};

/// Evaluation hit (or came too close to) a pole of a fixed-point denominator.
struct PoleError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace ellgen
