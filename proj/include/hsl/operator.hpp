#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "hsl/kernel.hpp"
#include "hsl/quadrature.hpp"
#include "hsl/space.hpp"
#include "hsl/transform.hpp"

namespace hsl {

/// A function on the line or the upper half-plane: either a callable or
/// samples with piecewise-linear interpolation (real arguments only, zero
/// outside the sampled range).
class FunctionHandle {
 public:
  using Fn = std::function<cplx(cplx)>;

  /// Interval of the real line outside which the function vanishes.
  struct Support {
    double lo;
    double hi;
  };

  static FunctionHandle callable(Fn f, std::optional<Support> support = std::nullopt);
  static FunctionHandle sampled(std::vector<double> x, std::vector<cplx> values);

  /// Throws EvaluationFailure for non-finite results, or for non-real
  /// arguments of sampled handles.
  cplx operator()(cplx z) const;

  const std::optional<Support>& support() const noexcept { return support_; }
  bool is_sampled() const noexcept { return !x_.empty(); }
  const std::vector<double>& nodes() const noexcept { return x_; }
  const std::vector<cplx>& samples() const noexcept { return v_; }

 private:
  FunctionHandle() = default;
  Fn fn_;
  std::vector<double> x_;
  std::vector<cplx> v_;
  std::optional<Support> support_;
};

/// H_phi f(x) = int f(x/t) phi(t) dt/t at each real x (x = 0 is allowed when
/// f is finite there). Atomic kernels are summed exactly.
std::vector<Estimate> apply_real(const KernelSpec& kernel, const FunctionHandle& f, const std::vector<double>& x,
                                 const SpaceParams& sp, const QuadOptions& opt = {});

/// H_phi f as a function handle: real arguments go through the real-line
/// integral, points with Im z > 0 through the holomorphic one. The moment
/// check and kernel breakpoints are done once.
FunctionHandle applied(const KernelSpec& kernel, const FunctionHandle& f, const SpaceParams& sp,
                       const QuadOptions& opt = {1e-13, 1e-300, 30});

/// h * (k * g) on the grid: linear (zero-padded) convolution of the
/// jump-averaged kernel samples with g, truncated back to the grid.
std::vector<cplx> apply_convolution(const LogKernel& k, const std::vector<cplx>& g);

/// The same integral at points of the open upper half-plane.
std::vector<Estimate> apply_holomorphic(const KernelSpec& kernel, const FunctionHandle& f,
                                        const std::vector<cplx>& z, const SpaceParams& sp,
                                        const QuadOptions& opt = {});

/// C_nu f(z) = z^{-nu} int_0^z zeta^{nu-1} f(zeta) d zeta along the segment
/// [0, z], i.e. int_0^1 u^{nu-1} f(zu) du with u = v^{1/Re nu}.
Estimate cesaro_direct(cplx nu, const FunctionHandle& f, cplx z, const QuadOptions& opt = {});

struct NormOptions {
  /// Line truncation |x| <= X (and r <= X for Bergman rays); a power-law
  /// tail is fitted beyond.
  double X = 1e4;
  /// Largest accepted tail uncertainty, relative to the p-th power of the norm.
  double tail_tol = 1e-6;
  std::size_t theta_nodes = 48;
  QuadOptions quad{1e-10, 1e-15, 20};
};

struct NormReport {
  double value = 0.0;
  double tail_bound = 0.0;
  double quadrature_err = 0.0;
};

/// Weighted norm: (int_R |f(x)|^p |x|^a dx)^{1/p} for line/Hardy (Hardy via
/// the boundary function), and (int int |f|^p y^{a-1} dx dy)^{1/p} for
/// Bergman, done in polar form with angular weight sin^{a-1}(theta).
NormReport norm(const FunctionHandle& f, const SpaceParams& sp, const NormOptions& opt = {});

/// w_a(B(x,y)) = int_{x-y}^{x+y} |s|^a ds.
double weighted_ball_measure(double x, double y, double a);

/// The pointwise bound [w_a(B(x,y))]^{-1/p} ||f|| for Hardy functions.
double growth_bound(double x, double y, const SpaceParams& sp, double f_norm);

/// CSV with header "x,re,im".
void write_function_csv(std::ostream& os, const std::vector<double>& x, const std::vector<cplx>& values);

}  // namespace hsl
