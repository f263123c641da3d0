#include "fastsda/error.hpp"

namespace fastsda {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ClassTooSmall: return "ClassTooSmall";
    case ErrorCode::LayoutInvalid: return "LayoutInvalid";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankDeficientProjection: return "RankDeficientProjection";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::NonpositiveSigma: return "NonpositiveSigma";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::RTooLarge: return "RTooLarge";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::ViewShapeMismatch: return "ViewShapeMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptBlock: return "CorruptBlock";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return ErrorCategory::Argument;
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NotConverged:
    case ErrorCode::EmptyResult:
    case ErrorCode::RankDeficient:
    case ErrorCode::RankDeficientProjection:
    case ErrorCode::NotSymmetric:
    case ErrorCode::NonFinite:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Data;
  }
}

}  // namespace fastsda
