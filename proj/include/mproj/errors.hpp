#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mproj {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An elementwise operation left its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operator or descriptor parameters are inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a precondition (too small, single class, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A linear solve failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or decoded.
class IoError : public Error {
 public:
  using Error::Error;
};

using WarningHandler = std::function<void(const std::string&)>;

/// Installs the sink for non-fatal diagnostics and returns the previous one.
/// The default handler writes each distinct message once to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace mproj
