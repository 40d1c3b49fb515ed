#pragma once

#include <stdexcept>
#include <string>

namespace mplab {

enum class ErrorCode {
  OrderExceeded,
  NotUnitary,
  NotIdempotent,
  GapFailure,
  UnstableIndex,
  NotProjection,
  NotElliptic,
  NotEquivariant,
  EllipticityLost,
  DerivativeMismatch,
  SupportLeak,
  QuadratureUnconverged,
  SizeLimit,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// convergence-type failures get their own exit code in the CLI
inline bool is_convergence_failure(ErrorCode c) {
  return c == ErrorCode::GapFailure || c == ErrorCode::UnstableIndex ||
         c == ErrorCode::QuadratureUnconverged || c == ErrorCode::EllipticityLost;
}

}  // namespace mplab
