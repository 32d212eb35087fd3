#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "hsl/kernel.hpp"
#include "hsl/quadrature.hpp"
#include "hsl/space.hpp"
#include "hsl/transform.hpp"

namespace hsl {

enum class SymbolMethod { Auto, ClosedForm, Quadrature, FFT };

std::string_view to_string(SymbolMethod m);

/// k^(xi) = int k(s) e^{-i xi s} ds with an error estimate (0 for closed
/// forms). Closed forms are used for Cesaro and atomic kernels, quadrature
/// otherwise.
Estimate symbol_at(const KernelSpec& kernel, const SpaceParams& sp, double xi,
                   SymbolMethod method = SymbolMethod::Auto, const QuadOptions& opt = {});

struct SymbolCurve {
  std::vector<double> xi;
  std::vector<cplx> values;
  std::vector<double> err;
  SymbolMethod method = SymbolMethod::Auto;
  double sup_modulus = 0.0;
  /// The closure of the range contains 0 (every non-atomic L1 kernel, by
  /// Riemann-Lebesgue; atomic kernels only when a sample actually vanishes).
  bool closure_includes_zero = false;
};

/// Symbol samples at the given ascending nodes. FFT is not accepted here;
/// use fft_symbol_curve.
SymbolCurve symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const std::vector<double>& xi_nodes,
                         SymbolMethod method = SymbolMethod::Auto, const QuadOptions& opt = {});

/// h * DFT of the periodized log-kernel at xi_m = pi m / S, m = -N/2..N/2-1.
/// The per-node error is the discarded tail mass plus a trapezoid term.
SymbolCurve fft_symbol_curve(const LogKernel& k);

/// FFT curve for a kernel on a grid; atomic kernels are placed on the grid by
/// moving each atom to its nearest node.
SymbolCurve fft_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid);

/// Picks the FFT values at the requested nodes; each node must be a DFT
/// frequency of the grid (GridMismatch otherwise).
SymbolCurve fft_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid,
                             const std::vector<double>& xi_nodes);

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Default report range [-200, 200] with 4096 nodes.
std::vector<double> default_xi_nodes(double xi_max = 200.0, std::size_t count = 4096);

struct CurveDistance {
  double distance;
  /// +inf when the nearest point is the limit value 0.
  double argmin_xi;
};

/// Distance from lambda to the sampled curve (polyline, refined with a local
/// quadratic in xi), and to 0 when the closure contains it.
CurveDistance curve_distance(const SymbolCurve& curve, cplx lambda);

/// CSV with header "xi,re,im,err" and 17 significant digits.
void write_curve_csv(std::ostream& os, const SymbolCurve& curve);

}  // namespace hsl
