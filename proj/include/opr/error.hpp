#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opr {

enum class ErrorCode {
  EmptyWindow,
  PatternTooShort,
  LengthMismatch,
  NotFusable,
  InvalidPattern,
  InvalidConfig,
  TooFewRows,
  ParseError,
  EmptySeries,
  EmptyInput,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A parse failure with the 1-based line it occurred on (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace opr
