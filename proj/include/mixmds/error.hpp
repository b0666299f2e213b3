#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mixmds {

enum class Errc {
  NotPrimePower,
  NotASubfield,
  DivisionByZero,
  LengthExceedsField,
  BadSupportSize,
  SupportMismatch,
  NonIntegerWeight,
  TooLarge,
  BadParameters,
  ConnectivityFailure,
  NoPathFound,
  MalformedPath,
  NotACodeword,
  TooManyPositions,
  DegenerateDenominator,
  ConditionViolated,
  ConstraintViolated,
  IoFailure,
  ParseError,
  Overflow,
};

std::string_view errc_name(Errc code) noexcept;

/// Every module error carries a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace mixmds
