#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kcomm {

enum class ErrorCode {
  InvalidInput,
  InvalidOrder,
  FieldMismatch,
  RankNotOne,
  NotScalarPlusNilpotent,
  NotIdempotent,
  NotNilpotent,
  KTooSmall,
  NotAnEigenpair,
  EmptySystem,
  SingularSystem,
  LambdaNotRootOfUnity,
  InputNotInTable,
  ProbeSetIncomplete,
  NotTheoremForm,
  PreservationFailed,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::RankNotOne: return "RankNotOne";
    case ErrorCode::NotScalarPlusNilpotent: return "NotScalarPlusNilpotent";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::NotAnEigenpair: return "NotAnEigenpair";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::LambdaNotRootOfUnity: return "LambdaNotRootOfUnity";
    case ErrorCode::InputNotInTable: return "InputNotInTable";
    case ErrorCode::ProbeSetIncomplete: return "ProbeSetIncomplete";
    case ErrorCode::NotTheoremForm: return "NotTheoremForm";
    case ErrorCode::PreservationFailed: return "PreservationFailed";
  }
  return "Unknown";
}

/// Base of every error raised by the library. Errors that carry matrix or
/// scalar payloads derive from this with the payload typed on the field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kcomm
