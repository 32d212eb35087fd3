#include <cmath>
#include <string>

#include "hsl/errors.hpp"
#include "hsl/space.hpp"

namespace hsl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivergentMoment: return "DivergentMoment";
    case ErrorCode::NonPositiveSupport: return "NonPositiveSupport";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::AtomicKernelUnsupported: return "AtomicKernelUnsupported";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::LambdaOnSpectrum: return "LambdaOnSpectrum";
    case ErrorCode::LambdaZero: return "LambdaZero";
    case ErrorCode::PointNotInUpperHalfPlane: return "PointNotInUpperHalfPlane";
    case ErrorCode::NonintegrableWeight: return "NonintegrableWeight";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::UnboundedRegime: return "UnboundedRegime";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::LebesgueLine: return "lebesgue";
    case SpaceKind::HardyBoundary: return "hardy";
    case SpaceKind::BergmanPlane: return "bergman";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(std::string_view name) {
  if (name == "lebesgue") return SpaceKind::LebesgueLine;
  if (name == "hardy") return SpaceKind::HardyBoundary;
  if (name == "bergman") return SpaceKind::BergmanPlane;
  throw Error(ErrorCode::ConfigError, "unknown space kind '" + std::string(name) + "'");
}

SpaceParams::SpaceParams(double p, double a, SpaceKind kind) : p_(p), a_(a), kind_(kind) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidArgument, "a must be finite");
  if (infinite_p() && kind != SpaceKind::LebesgueLine)
    throw Error(ErrorCode::InvalidArgument, "p = inf is only allowed for Lebesgue norms");
  if (kind == SpaceKind::BergmanPlane) {
    if (!(a > 0.0)) throw Error(ErrorCode::NonintegrableWeight, "Bergman spaces need a > 0");
  } else if (!(a > -1.0)) {
    throw Error(ErrorCode::NonintegrableWeight, "weight |x|^a needs a > -1");
  }
  beta_ = infinite_p() ? 0.0 : (a + 1.0) / p;
}

}  // namespace hsl
