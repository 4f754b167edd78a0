#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qloop/scalar.hpp"

namespace qloop {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text, JSON or argument.
struct ParseError : Error {
  using Error::Error;
};

/// Out-of-range vertex, size mismatch, invalid matrix or permutation.
struct InvalidArgument : Error {
  using Error::Error;
};

struct NotAlternatingError : Error {
  using Error::Error;
};

struct OrientedCycleError : Error {
  using Error::Error;
};

/// The step list does not return the initial quiver to itself.
struct NotALoopError : Error {
  NotALoopError(const std::string& what, IntMatrix final_matrix)
      : Error(what), final_matrix(std::move(final_matrix)) {}
  IntMatrix final_matrix;
};

struct DegenerateLoopError : Error {
  using Error::Error;
};

struct NotPositiveError : Error {
  using Error::Error;
};

struct PentagonPreconditionError : Error {
  PentagonPreconditionError(const std::string& what, std::int64_t actual)
      : Error(what), actual_arrows(actual) {}
  std::int64_t actual_arrows;
};

/// Raised when a lattice enumeration exceeds its configured point budget.
struct EnumerationLimitError : Error {
  using Error::Error;
};

}  // namespace qloop
