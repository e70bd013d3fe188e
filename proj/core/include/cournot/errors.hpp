#pragma once

#include <stdexcept>
#include <string>

namespace cournot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A history window or vector does not have the size the delays require.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameters or configuration values outside their admissible range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// One of the positivity assumptions on the market intercepts fails.
class AssumptionError : public ValidationError {
 public:
  enum class Which { A1, A2, Both };

  AssumptionError(Which which, const std::string& message)
      : ValidationError(message), which_(which) {}

  Which which() const noexcept { return which_; }

 private:
  Which which_;
};

/// A numerical procedure could not produce its result (no crossing in a
/// bracket, divergent orbit, degenerate denominator).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cournot
