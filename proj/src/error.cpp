#include "mixmds/error.hpp"

namespace mixmds {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::LengthExceedsField: return "LengthExceedsField";
    case Errc::BadSupportSize: return "BadSupportSize";
    case Errc::SupportMismatch: return "SupportMismatch";
    case Errc::NonIntegerWeight: return "NonIntegerWeight";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadParameters: return "BadParameters";
    case Errc::ConnectivityFailure: return "ConnectivityFailure";
    case Errc::NoPathFound: return "NoPathFound";
    case Errc::MalformedPath: return "MalformedPath";
    case Errc::NotACodeword: return "NotACodeword";
    case Errc::TooManyPositions: return "TooManyPositions";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::ConstraintViolated: return "ConstraintViolated";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace mixmds
