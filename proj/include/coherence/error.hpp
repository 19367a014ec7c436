#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coherence {

enum class ErrorKind {
  NotHermitian,
  NotPSD,
  BadTrace,
  NotSquare,
  ConvergenceFailure,
  ZeroDiagonal,
  NotNormalized,
  BadParams,
  DimensionMismatch,
  InvalidEnsemble,
  NotIsometry,
  RankMismatch,
  NotADecomposition,
  BadProbabilityVector,
  BadBloch,
  BadX,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::BadTrace: return "BadTrace";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidEnsemble: return "InvalidEnsemble";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotADecomposition: return "NotADecomposition";
    case ErrorKind::BadProbabilityVector: return "BadProbabilityVector";
    case ErrorKind::BadBloch: return "BadBloch";
    case ErrorKind::BadX: return "BadX";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers which
/// invariant failed, `what()` carries the measured residual where relevant.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coherence
