#pragma once

#include <stdexcept>
#include <string>

namespace demres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A windowed series operation could not certify that its output is exact.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& detail)
      : Error("truncation too narrow: " + detail) {}
};

/// Bad user input (weights, geometry parameters, CLI arguments).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two integration pipelines returned different values for the same input.
class PipelineDisagreement : public Error {
 public:
  using Error::Error;
};

}  // namespace demres
