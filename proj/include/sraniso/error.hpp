#pragma once

#include <stdexcept>
#include <string>

namespace sraniso {

enum class ErrorKind {
  MixedDimension,
  BadVertex,
  NotPure,
  TooSmall,
  NotAFace,
  NoPath,
  WrongLength,
  DivByZero,
  ZeroPolynomial,
  DenominatorVanished,
  DegreeTooHigh,
  CannotAvoid,
  UnstableRank,
  NotCodim1,
  BadShape,
  CharNot2,
  WrongDegree,
  EvenDimension,
  NotSimplexBoundary,
  WrongParity,
  WrongFaceSize,
  BadParity,
  NoCertificateFound,
  NotPolygon,
  ZeroInput,
  SingularForm,
  ConfigError,
  BudgetExceeded,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MixedDimension: return "MixedDimension";
    case ErrorKind::BadVertex: return "BadVertex";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DenominatorVanished: return "DenominatorVanished";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::CannotAvoid: return "CannotAvoid";
    case ErrorKind::UnstableRank: return "UnstableRank";
    case ErrorKind::NotCodim1: return "NotCodim1";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::CharNot2: return "CharNot2";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::EvenDimension: return "EvenDimension";
    case ErrorKind::NotSimplexBoundary: return "NotSimplexBoundary";
    case ErrorKind::WrongParity: return "WrongParity";
    case ErrorKind::WrongFaceSize: return "WrongFaceSize";
    case ErrorKind::BadParity: return "BadParity";
    case ErrorKind::NoCertificateFound: return "NoCertificateFound";
    case ErrorKind::NotPolygon: return "NotPolygon";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::SingularForm: return "SingularForm";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sraniso
