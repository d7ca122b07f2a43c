#pragma once

#include <stdexcept>
#include <string>

namespace spdcimg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid size, negative width, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A quadratic phase would be undersampled on the grid. The message names the
/// grid change (n or dx) that would satisfy the criterion.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Field or spectrum tagged with the wrong domain for the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An arm chain contains an element the kernel builder cannot handle.
class UnsupportedElement : public Error {
 public:
  using Error::Error;
};

/// Configuration text failed to parse or validate.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace spdcimg
