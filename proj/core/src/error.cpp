#include "nativedil/error.hpp"

namespace nativedil {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::BadCongruence: return "BadCongruence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StreamExhausted: return "StreamExhausted";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::MaxAttemptsExceeded: return "MaxAttemptsExceeded";
    case ErrorCode::MalformedSignature: return "MalformedSignature";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadParamsId: return "BadParamsId";
    case ErrorCode::TruncatedInput: return "TruncatedInput";
    case ErrorCode::NonCanonical: return "NonCanonical";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InfeasibleAtCap: return "InfeasibleAtCap";
    case ErrorCode::XiTooLarge: return "XiTooLarge";
    case ErrorCode::EtaPrimeInvalid: return "EtaPrimeInvalid";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::NonIntegralCost: return "NonIntegralCost";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

}  // namespace nativedil
