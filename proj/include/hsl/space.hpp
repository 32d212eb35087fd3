#pragma once

#include <complex>
#include <limits>
#include <string_view>

namespace hsl {

using cplx = std::complex<double>;

enum class SpaceKind { LebesgueLine, HardyBoundary, BergmanPlane };

std::string_view to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

/// Exponent p and weight power a of the weighted space. p may be infinite
/// only for LebesgueLine, where the weight is irrelevant to the sup norm.
class SpaceParams {
 public:
  SpaceParams(double p, double a, SpaceKind kind);

  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }
  SpaceKind kind() const noexcept { return kind_; }
  bool infinite_p() const noexcept { return p_ == std::numeric_limits<double>::infinity(); }

  /// (a+1)/p; zero when p is infinite.
  double beta() const noexcept { return beta_; }

  SpaceParams with_kind(SpaceKind kind) const { return SpaceParams(p_, a_, kind); }

 private:
  double p_;
  double a_;
  SpaceKind kind_;
  double beta_;
};

}  // namespace hsl
