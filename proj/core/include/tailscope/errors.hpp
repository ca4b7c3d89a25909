#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailscope {

// Base class for every error thrown by the library. Callers that only
// need to distinguish "bad input" from "I/O trouble" can catch Error and
// IoError separately; the CLI maps them to exit codes 2 and 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySampleError : public Error {
 public:
  EmptySampleError() : Error("sample is empty") {}
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class InvalidRangeError : public Error {
 public:
  using Error::Error;
};

class DegenerateSeriesError : public Error {
 public:
  using Error::Error;
};

class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

class NonpositiveSlopeError : public Error {
 public:
  using Error::Error;
};

class OutOfSupportError : public Error {
 public:
  using Error::Error;
};

class NonConvergentError : public Error {
 public:
  using Error::Error;
};

class NoBracketError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class InvalidDeltaError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Filesystem-level failures (missing file, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tailscope
