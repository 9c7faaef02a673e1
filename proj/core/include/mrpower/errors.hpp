#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrpower {

enum class ErrorKind {
  NotPsd,
  NotHermitian,
  DimensionMismatch,
  NotTracePreserving,
  InvalidPovm,
  InvalidStochastic,
  NotDensity,
  NotIncoherent,
  NotUnital,
  UnsupportedScale,
  PreconditionViolation,
  InvalidRank,
  ConstructionFailed,
  SingularTotal,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` says which contract was
/// violated and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mrpower
