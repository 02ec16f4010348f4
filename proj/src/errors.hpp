#pragma once

#include <stdexcept>
#include <string>

namespace commsched {

// Error taxonomy shared by the library and the CLI. The numeric codes double
// as process exit codes and as the C API status values, so they must stay in
// sync with commsched.h.
enum class ErrorKind {
  Validation = 2,  // structural problem in an input (graph, schedule, JSON)
  Coverage = 3,    // a required entry (oracle time, trace record) is missing
  Parameter = 4,   // argument out of its declared range
  Io = 5,          // file system failure (CLI only)
  Domain = 6,      // value outside the operation's domain (maps to exit 2)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Domain errors have no exit code of their own; they surface as
  // validation failures at the process boundary.
  int exit_code() const noexcept {
    return kind_ == ErrorKind::Domain ? 2 : static_cast<int>(kind_);
  }

private:
  ErrorKind kind_;
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::Validation, message) {}
};

class CoverageError : public Error {
public:
  explicit CoverageError(const std::string& message)
      : Error(ErrorKind::Coverage, message) {}
};

class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& message)
      : Error(ErrorKind::Parameter, message) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::Io, message) {}
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& message)
      : Error(ErrorKind::Domain, message) {}
};

}  // namespace commsched
