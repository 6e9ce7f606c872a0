#include "pstab/errors.hpp"

namespace pstab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateUnit: return "DuplicateUnit";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::NonOverlappingSets: return "NonOverlappingSets";
    case ErrorCode::UnitSetMismatch: return "UnitSetMismatch";
    case ErrorCode::TooFewUnits: return "TooFewUnits";
    case ErrorCode::TooManyUnits: return "TooManyUnits";
    case ErrorCode::DegenerateIndex: return "DegenerateIndex";
    case ErrorCode::ScopeViolation: return "ScopeViolation";
    case ErrorCode::DegenerateAdjustment: return "DegenerateAdjustment";
    case ErrorCode::InvalidDesign: return "InvalidDesign";
  }
  return "UnknownError";
}

}  // namespace pstab
