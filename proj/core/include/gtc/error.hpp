#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtc {

enum class ErrorCode {
  MissingComposite,
  AssociativityViolation,
  IdentityViolation,
  InvalidPosetRelation,
  InvalidFunctor,
  FunctorialityViolation,
  DiscretenessViolation,
  NotAGroupoid,
  SizeExceeded,
  UnknownComponent,
  MissingTerminalObject,
  IsoVerificationFailed,
  IsoSearchFailed,
  NotStronglySeparating,
  CatalogEntryLacksTerminal,
  PreconditionViolation,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending ids.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gtc
