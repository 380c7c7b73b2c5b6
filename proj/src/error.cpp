#include "flatchain/error.hpp"

namespace flatchain {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid_input";
    case ErrorKind::kEmptyGroup: return "empty_group";
    case ErrorKind::kTrivialGroup: return "trivial_group";
    case ErrorKind::kNormAxiomViolation: return "norm_axiom_violation";
    case ErrorKind::kCoefficientOverflow: return "coefficient_overflow";
    case ErrorKind::kZeroElement: return "zero_element";
    case ErrorKind::kDimensionZero: return "dimension_zero";
    case ErrorKind::kWindowTooSmall: return "window_too_small";
    case ErrorKind::kSearchSpaceExceeded: return "search_space_exceeded";
    case ErrorKind::kLevelFunctionNotLipschitz: return "level_function_not_lipschitz";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kProjectionMismatch: return "projection_mismatch";
    case ErrorKind::kIoFailure: return "io_failure";
  }
  return "unknown";
}

nlohmann::json Error::to_json() const {
  nlohmann::json j = {{"error", std::string(kind_name(kind_))},
                      {"message", what()}};
  if (!detail_.empty()) j["detail"] = detail_;
  return j;
}

}  // namespace flatchain
