#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oval {

enum class Errc {
  NonPrimeCharacteristic,
  SizeCapExceeded,
  InvalidParameters,
  FieldMismatch,
  DivisionByZero,
  ZeroVector,
  CoincidentPoints,
  FieldTooSmall,
  EvenCharacteristic,
  NonConicOval,
  NoBasisFound,
  SingularBasis,
  CapExceeded,
  OutsideRegion,
  ZeroDemand,
  ProblemTooLarge,
  UndecidableAtResolution,
  DimensionMismatch,
  ParseError,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InvalidParameters: return "InvalidParameters";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::CoincidentPoints: return "CoincidentPoints";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NonConicOval: return "NonConicOval";
    case Errc::NoBasisFound: return "NoBasisFound";
    case Errc::SingularBasis: return "SingularBasis";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::OutsideRegion: return "OutsideRegion";
    case Errc::ZeroDemand: return "ZeroDemand";
    case Errc::ProblemTooLarge: return "ProblemTooLarge";
    case Errc::UndecidableAtResolution: return "UndecidableAtResolution";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure surfaced by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace oval
