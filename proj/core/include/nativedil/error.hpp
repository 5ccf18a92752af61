#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nativedil {

enum class ErrorCode {
  NotPrime,
  NotPowerOfTwo,
  BadCongruence,
  DimensionMismatch,
  StreamExhausted,
  BadParams,
  MaxAttemptsExceeded,
  MalformedSignature,
  BadMagic,
  BadParamsId,
  TruncatedInput,
  NonCanonical,
  DomainError,
  InfeasibleAtCap,
  XiTooLarge,
  EtaPrimeInvalid,
  NoFeasiblePoint,
  NonIntegralCost,
  PreconditionViolated,
  TooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // True for the decoding failures of the key/signature file formats.
  bool is_format_error() const noexcept {
    switch (code_) {
      case ErrorCode::MalformedSignature:
      case ErrorCode::BadMagic:
      case ErrorCode::BadParamsId:
      case ErrorCode::TruncatedInput:
      case ErrorCode::NonCanonical:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace nativedil
