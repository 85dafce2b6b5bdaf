#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqb {

enum class ErrorCode {
  EmptyText,
  Overflow,
  MalformedTemplate,
  DuplicateQuestion,
  SchemaError,
  DegenerateTable,
  FormatError,
  AllOOV,
  InvalidDimension,
  InternalInvariantViolation,
  ZeroVector,
  DimensionMismatch,
  DuplicateId,
  InfeasibleSplit,
  DegenerateLabels,
  DivergedTraining,
  EmptySplit,
  MissingEmbedding,
  IncompleteTriad,
  ScaleViolation,
  BadInput,
  ConfigError,
  ConstantPrediction,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the bench carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sqb
