#pragma once

#include <stdexcept>
#include <string>

namespace fastsda {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  NonFinite,
  NotSymmetric,
  NotPositiveDefinite,
  NotConverged,
  EmptyResult,
  DegenerateInput,
  ClassTooSmall,
  LayoutInvalid,
  RankDeficient,
  RankDeficientProjection,
  OracleTooLarge,
  NonpositiveSigma,
  TooFewSamples,
  RTooLarge,
  KTooLarge,
  DegenerateData,
  ParseError,
  RaggedRows,
  EmptyFile,
  ViewShapeMismatch,
  MissingLabels,
  VersionMismatch,
  CorruptBlock,
  IoError,
};

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { Argument, Data, Numerical };

const char* to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fastsda
