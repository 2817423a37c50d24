#include "gribov/error.hpp"

namespace gribov {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAnEigenpair: return "NotAnEigenpair";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::QuasiNullVector: return "QuasiNullVector";
    case ErrorKind::SingularMomentSystem: return "SingularMomentSystem";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NoRealZero: return "NoRealZero";
    case ErrorKind::TrackingLost: return "TrackingLost";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gribov
