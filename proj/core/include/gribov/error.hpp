#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gribov {

enum class ErrorKind {
  InvalidParameter,
  SizeExceeded,
  ShapeMismatch,
  NotAnEigenpair,
  NoConvergence,
  DegenerateSpectrum,
  QuasiNullVector,
  SingularMomentSystem,
  HypothesisViolated,
  NoRealZero,
  TrackingLost,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NoConvergence : public Error {
 public:
  NoConvergence(int iterations, const std::string& what)
      : Error(ErrorKind::NoConvergence, what), iterations_(iterations) {}

  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

}  // namespace gribov
