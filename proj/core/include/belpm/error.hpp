#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace belpm {

enum class ErrorCode {
  SeriesTooShort,
  InvalidParameter,
  IndexOutOfRange,
  DimensionMismatch,
  NoEligibleSamples,
  DegenerateStats,
  TooFewSamples,
  SingularSystem,
  ZeroVariance,
  LengthMismatch,
  EmptyInput,
  ParseError,
  GapError,
  EmptyFile,
  VersionMismatch,
  CorruptFile,
  ConfigError,
  IoError,
  NumericFailure,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure that remembers the 1-based line it happened on.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace belpm
