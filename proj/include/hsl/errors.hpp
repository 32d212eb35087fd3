#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsl {

enum class ErrorCode {
  InvalidArgument,
  DivergentMoment,
  NonPositiveSupport,
  InvalidDelta,
  AtomicKernelUnsupported,
  GridMismatch,
  LambdaOnSpectrum,
  LambdaZero,
  PointNotInUpperHalfPlane,
  NonintegrableWeight,
  TruncationTooSmall,
  UnboundedRegime,
  EvaluationFailure,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the condition rather than the text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hsl
