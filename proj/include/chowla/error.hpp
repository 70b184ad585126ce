#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chowla {

enum class ErrorCode {
  NotSymmetric,
  ContainsZero,
  NonPositiveElement,
  ZeroShift,
  EmptySet,
  PreconditionViolated,
  NotRealValued,
  NotMeanZero,
  NonConvergence,
  GridTooSmall,
  GridMismatch,
  NotReal,
  KTooSmall,
  BNotSubset,
  WitnessInvalid,
  HypothesisFailed,
  DecompositionUnavailable,
  SupportsNotDisjoint,
  SingularSystem,
  TooLarge,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ContainsZero: return "ContainsZero";
    case ErrorCode::NonPositiveElement: return "NonPositiveElement";
    case ErrorCode::ZeroShift: return "ZeroShift";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::NotMeanZero: return "NotMeanZero";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NotReal: return "NotReal";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::BNotSubset: return "BNotSubset";
    case ErrorCode::WitnessInvalid: return "WitnessInvalid";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::DecompositionUnavailable: return "DecompositionUnavailable";
    case ErrorCode::SupportsNotDisjoint: return "SupportsNotDisjoint";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chowla
