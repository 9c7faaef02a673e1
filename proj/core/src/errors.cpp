#include "mrpower/errors.hpp"

namespace mrpower {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::InvalidStochastic: return "InvalidStochastic";
    case ErrorKind::NotDensity: return "NotDensity";
    case ErrorKind::NotIncoherent: return "NotIncoherent";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::UnsupportedScale: return "UnsupportedScale";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::SingularTotal: return "SingularTotal";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace mrpower
