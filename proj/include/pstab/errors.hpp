#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstab {

enum class ErrorCode {
  DuplicateUnit,
  EmptyInput,
  MalformedRecord,
  NonOverlappingSets,
  UnitSetMismatch,
  TooFewUnits,
  TooManyUnits,
  DegenerateIndex,
  ScopeViolation,
  DegenerateAdjustment,
  InvalidDesign,
};

std::string_view to_string(ErrorCode code);

// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pstab
