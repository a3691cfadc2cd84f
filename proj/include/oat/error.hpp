#pragma once

#include <stdexcept>
#include <string>

namespace oat {

enum class ErrorCode {
  NormViolation,
  ShapeViolation,
  InvalidState,
  NonPositiveInformation,
  DegenerateInitialState,
  InvalidConfig,
  ResourceGuard,
  IoFailure,
  SelfCheckFailure,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NormViolation: return "NormViolation";
    case ErrorCode::ShapeViolation: return "ShapeViolation";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NonPositiveInformation: return "NonPositiveInformation";
    case ErrorCode::DegenerateInitialState: return "DegenerateInitialState";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ResourceGuard: return "ResourceGuard";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::SelfCheckFailure: return "SelfCheckFailure";
  }
  return "Unknown";
}

}  // namespace oat
