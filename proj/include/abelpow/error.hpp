#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abelpow {

enum class ErrorCode {
  InvalidArgument,
  SingularMatrix,
  NoConvergence,
  Overflow,
  ResolventPole,
  DecompositionFails,
  PoleHit,
  IntegralDiverges,
  QuadratureUnstable,
  GridTooCoarse,
  NotInComplement,
  ParseError,
  DimensionMismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ResolventPole: return "ResolventPole";
    case ErrorCode::DecompositionFails: return "DecompositionFails";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::IntegralDiverges: return "IntegralDiverges";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotInComplement: return "NotInComplement";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Input errors (bad flags, malformed files) as opposed to numerical failures.
  bool is_input_error() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::ParseError ||
           code_ == ErrorCode::DimensionMismatch;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::InvalidArgument, message);
}

}  // namespace abelpow
