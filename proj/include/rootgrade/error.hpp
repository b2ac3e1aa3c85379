#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootgrade {

enum class ErrorKind {
  IndexOutOfRange,
  ShapeMismatch,
  NotInSpan,
  NoComplement,
  StarNotInvolutive,
  UnknownName,
  WrongKind,
  NotInHF,
  NotUniform,
  RankTooSmall,
  NotInGS,
  NotClosed,
  InvalidCocycle,
  NotPerfect,
  TauGNonzero,
  DNotTrivial,
  CertificateFailure,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::NoComplement: return "NoComplement";
    case ErrorKind::StarNotInvolutive: return "StarNotInvolutive";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::NotInHF: return "NotInHF";
    case ErrorKind::NotUniform: return "NotUniform";
    case ErrorKind::RankTooSmall: return "RankTooSmall";
    case ErrorKind::NotInGS: return "NotInGS";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::InvalidCocycle: return "InvalidCocycle";
    case ErrorKind::NotPerfect: return "NotPerfect";
    case ErrorKind::TauGNonzero: return "TauGNonzero";
    case ErrorKind::DNotTrivial: return "DNotTrivial";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every library failure carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rootgrade
