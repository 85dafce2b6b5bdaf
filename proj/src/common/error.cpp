#include "sqb/common/error.hpp"

namespace sqb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MalformedTemplate: return "MalformedTemplate";
    case ErrorCode::DuplicateQuestion: return "DuplicateQuestion";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DegenerateTable: return "DegenerateTable";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::AllOOV: return "AllOOV";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InfeasibleSplit: return "InfeasibleSplit";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::DivergedTraining: return "DivergedTraining";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::IncompleteTriad: return "IncompleteTriad";
    case ErrorCode::ScaleViolation: return "ScaleViolation";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ConstantPrediction: return "ConstantPrediction";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sqb
