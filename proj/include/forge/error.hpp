#pragma once

#include <stdexcept>
#include <string>

namespace forge {

enum class ErrorCode {
  Domain,
  UnboundSymbol,
  Parse,
  UnsupportedOrder,
  NotAnEigenfunction,
  ZeroCrossing,
  NotDivisible,
  NotAKernelElement,
  LimitExceeded,
  QuantizationMismatch,
  TooManySkipped,
  SingularLeadingCoefficient,
  DegenerateResidual,
  Config,
  Io,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception type; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace forge
