#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iwalink {

enum class ErrorKind {
  ZeroPolynomial,
  DimensionMismatch,
  BothZero,
  ZeroDivisor,
  InvalidArgument,
  ScaleExceeded,
  InsufficientSamples,
  NoStableFit,
  VanishesOnTorus,
  MismatchMuLambda,
  SurjectivityFailure,
  MissingSublink,
  MissingLinkingNumbers,
  PrecisionInsufficient,
  NotStabilized,
  IndexOutOfRange,
  UnknownName,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ScaleExceeded: return "ScaleExceeded";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NoStableFit: return "NoStableFit";
    case ErrorKind::VanishesOnTorus: return "VanishesOnTorus";
    case ErrorKind::MismatchMuLambda: return "MismatchMuLambda";
    case ErrorKind::SurjectivityFailure: return "SurjectivityFailure";
    case ErrorKind::MissingSublink: return "MissingSublink";
    case ErrorKind::MissingLinkingNumbers: return "MissingLinkingNumbers";
    case ErrorKind::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` carries the failure mode.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace iwalink
