#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minvec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A p-adic quantity vanished (or lost its leading digit) at the working
/// precision, so the requested answer cannot be decided.
class PrecisionLoss : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search or enumeration would exceed its configured size.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t estimate, std::int64_t partial = 0)
      : Error(what), estimate_(estimate), partial_(partial) {}

  std::uint64_t estimate() const noexcept { return estimate_; }
  /// Best value established before the budget ran out (search-specific).
  std::int64_t partial() const noexcept { return partial_; }

 private:
  std::uint64_t estimate_;
  std::int64_t partial_;
};

/// Input data that violates a structural precondition (e must divide n, the
/// algebra F[beta] is not a field, ...).
class DatumInvalid : public Error {
 public:
  using Error::Error;
};

/// A construction that must succeed on valid data did not (no character
/// extension, degenerate pairing, reducible induced character, ...).
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed datum, query or report text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace minvec
