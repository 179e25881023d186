#include "forge/error.hpp"

namespace forge {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NotAnEigenfunction: return "NotAnEigenfunction";
    case ErrorCode::ZeroCrossing: return "ZeroCrossing";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotAKernelElement: return "NotAKernelElement";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::QuantizationMismatch: return "QuantizationMismatch";
    case ErrorCode::TooManySkipped: return "TooManySkipped";
    case ErrorCode::SingularLeadingCoefficient: return "SingularLeadingCoefficient";
    case ErrorCode::DegenerateResidual: return "DegenerateResidual";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace forge
