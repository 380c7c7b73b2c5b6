#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace flatchain {

enum class ErrorKind {
  kInvalidInput,
  kEmptyGroup,
  kTrivialGroup,
  kNormAxiomViolation,
  kCoefficientOverflow,
  kZeroElement,
  kDimensionZero,
  kWindowTooSmall,
  kSearchSpaceExceeded,
  kLevelFunctionNotLipschitz,
  kInfeasible,
  kProjectionMismatch,
  kIoFailure,
};

// Stable snake_case name used in the CLI's machine-readable error output.
std::string_view kind_name(ErrorKind kind);

// Domain error. `detail` carries structured context (offending axiom, witness
// pair, ...) and is merged into the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), kind_(kind), detail_(std::move(detail)) {}

  ErrorKind kind() const { return kind_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const;

 private:
  ErrorKind kind_;
  nlohmann::json detail_;
};

}  // namespace flatchain
