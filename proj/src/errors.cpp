#include "mplab/errors.hpp"

namespace mplab {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::GapFailure: return "GapFailure";
    case ErrorCode::UnstableIndex: return "UnstableIndex";
    case ErrorCode::NotProjection: return "NotProjection";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::EllipticityLost: return "EllipticityLost";
    case ErrorCode::DerivativeMismatch: return "DerivativeMismatch";
    case ErrorCode::SupportLeak: return "SupportLeak";
    case ErrorCode::QuadratureUnconverged: return "QuadratureUnconverged";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mplab
