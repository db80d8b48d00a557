#pragma once

#include <stdexcept>
#include <string>

namespace specrisk {

enum class ErrorCode {
  Io,
  Parse,
  InvalidArgument,
  Precondition,
  EmptyUniverse,
  Numeric,
  Infeasible,
  Domain,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

/// Raised when a target return lies outside the attainable interval.
/// Carries the interval so callers can report or re-grid.
class InfeasibleError : public Error {
public:
  InfeasibleError(const std::string& message, double lo, double hi)
      : Error(ErrorCode::Infeasible, message), lo_(lo), hi_(hi) {}

  double feasible_lo() const { return lo_; }
  double feasible_hi() const { return hi_; }

private:
  double lo_;
  double hi_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace specrisk
