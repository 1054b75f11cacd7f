#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dispcat {

enum class ErrorCode {
  MalformedInput,
  UnknownObject,
  UnknownMorphism,
  ResourceLimit,
  BaseMismatch,
  BaseNotIso,
  BaseNotUnivalent,
  NotDiscrete,
  NotLimiting,
  InvalidWitness,
  NotAMonad,
  NotClosed,
  NotUnivalentDisplay,
  CwALawFailure,
  ParseError,
  DuplicateName,
  UnresolvedReference,
  UnknownCommand,
  UnknownTarget,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownMorphism: return "UnknownMorphism";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::BaseNotIso: return "BaseNotIso";
    case ErrorCode::BaseNotUnivalent: return "BaseNotUnivalent";
    case ErrorCode::NotDiscrete: return "NotDiscrete";
    case ErrorCode::NotLimiting: return "NotLimiting";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::NotAMonad: return "NotAMonad";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotUnivalentDisplay: return "NotUnivalentDisplay";
    case ErrorCode::CwALawFailure: return "CwALawFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dispcat
