#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace majolab {

enum class ErrorCode {
  EmptyInput,
  NegativeWeight,
  NotNormalized,
  NotDoublyStochastic,
  TooFewPoints,
  NonMonotoneParameter,
  ModulusOutOfRange,
  DomainError,
  ModelInvariantViolation,
  ModeCountExceedsBlock,
  TooManyModes,
  GridCrossesRegionBoundary,
  StepLeavesRegion,
  BlockTooSmall,
  QOutOfRange,
  HypothesisViolated,
  InvalidSpectrum,
  StepLeavesDomain,
  SizeOutOfRange,
  NoConvergence,
  BadBlock,
  IoError,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotDoublyStochastic: return "NotDoublyStochastic";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonMonotoneParameter: return "NonMonotoneParameter";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ModelInvariantViolation: return "ModelInvariantViolation";
    case ErrorCode::ModeCountExceedsBlock: return "ModeCountExceedsBlock";
    case ErrorCode::TooManyModes: return "TooManyModes";
    case ErrorCode::GridCrossesRegionBoundary: return "GridCrossesRegionBoundary";
    case ErrorCode::StepLeavesRegion: return "StepLeavesRegion";
    case ErrorCode::BlockTooSmall: return "BlockTooSmall";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::StepLeavesDomain: return "StepLeavesDomain";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadBlock: return "BadBlock";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; the code identifies the failed
/// precondition so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace majolab
