#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsl/space.hpp"

namespace hsl {

class KernelSpec;

/// phi(t) = t^{-nu} on [1, inf).
struct CesaroKernel {
  cplx nu;
};

/// phi(t) = t^{exponent} on [lo, hi); hi may be +inf.
struct PowerCutKernel {
  cplx exponent;
  double lo;
  double hi;
};

/// Piecewise-linear interpolation of (t, value) nodes; zero outside [t.front(), t.back()].
struct SampledKernel {
  std::vector<double> t;
  std::vector<cplx> values;
};

struct Atom {
  cplx mass;
  double position;
};

/// Finite sum of point masses, sum_j c_j delta_{t_j}.
struct AtomicKernel {
  std::vector<Atom> atoms;
};

/// inner * indicator of [delta, 1/delta).
struct TruncatedKernel {
  std::shared_ptr<const KernelSpec> inner;
  double delta;
};

/// Which one-sided limit to take where the kernel jumps.
enum class Side { Left, Right, Average };

enum class MomentMode { Signed, Absolute };

struct MomentResult {
  cplx value;
  double abs_err = 0.0;
  bool exact = false;
};

/// Kernel of a Hausdorff operator. Immutable after construction; every
/// factory validates the support and atom invariants.
class KernelSpec {
 public:
  using Variant =
      std::variant<CesaroKernel, PowerCutKernel, SampledKernel, AtomicKernel, TruncatedKernel>;

  static KernelSpec cesaro(cplx nu);
  static KernelSpec power_cut(cplx exponent, double lo, double hi);
  static KernelSpec sampled(std::vector<double> t, std::vector<cplx> values);
  static KernelSpec atomic(std::vector<Atom> atoms);
  static KernelSpec truncated(const KernelSpec& inner, double delta);
  /// Identically zero kernel (an empty atomic measure has no log-kernel, so
  /// this is a two-node sampled kernel with zero values).
  static KernelSpec zero();

  const Variant& variant() const noexcept { return v_; }
  bool is_atomic() const noexcept { return std::holds_alternative<AtomicKernel>(v_); }

  /// True when all atom masses are nonnegative reals (atomic kernels only;
  /// always true for other variants).
  bool nonnegative_masses() const;

  /// Short human-readable identifier for reports.
  std::string describe() const;

  /// phi(e^s). Throws AtomicKernelUnsupported for atomic kernels.
  cplx phi_log(double s, Side side = Side::Right) const;

  /// Support in the log variable s = ln t; hi may be +inf.
  std::pair<double, double> log_support() const;

  /// Sorted log-variable locations where phi jumps or has a kink, including
  /// the support ends.
  std::vector<double> log_breakpoints() const;

  /// For kernels with unbounded support, the rate rho with
  /// |e^{beta s} phi(e^s)| ~ e^{-rho s} as s -> inf. Empty when compact.
  std::optional<double> log_decay_rate(double beta) const;

 private:
  explicit KernelSpec(Variant v);
  Variant v_;
};

/// Integral of phi(t) t^{beta-1} dt (Signed) or |phi(t)| t^{beta-1} dt
/// (Absolute) over (0, inf). Atomic kernels are summed exactly.
MomentResult moment(const KernelSpec& kernel, const SpaceParams& sp, MomentMode mode);

/// phi * indicator[delta, 1/delta). Atomic kernels are filtered by position.
KernelSpec truncate(const KernelSpec& kernel, double delta);

/// k(s) = e^{beta s} phi(e^s), the kernel in the log variable.
cplx log_kernel_value(const KernelSpec& kernel, double beta, double s, Side side = Side::Right);

/// Integration plan for k over the real line: ascending finite cut points
/// (every breakpoint, plus a far cut for unbounded support) and a bound on
/// the mass of |k| beyond the last cut.
struct LogPieces {
  std::vector<double> cuts;
  double tail_bound = 0.0;
};

/// Throws DivergentMoment when k is not integrable at +inf.
LogPieces log_pieces(const KernelSpec& kernel, double beta, double rel_tail = 1e-15);

}  // namespace hsl
