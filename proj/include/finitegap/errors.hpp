#pragma once
// Error taxonomy shared by the library and the CLI.  Exit codes follow the
// sysexits-style convention used by the command line tool: validation failures
// of inputs map to 2, numerical failures (non-convergence, bracketing loss,
// recurrence breakdown) to 3, usage errors to 64 and missing input files to 66.

#include <stdexcept>
#include <string>

namespace finitegap {

enum class ErrorCode : int {
  validation = 2,
  numerical = 3,
  usage = 64,
  missing_input = 66,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::validation, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCode::numerical, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what)
      : Error(ErrorCode::usage, what) {}
};

class MissingInputError : public Error {
 public:
  explicit MissingInputError(const std::string& what)
      : Error(ErrorCode::missing_input, what) {}
};

}  // namespace finitegap
