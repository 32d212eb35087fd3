#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsl/kernel.hpp"
#include "hsl/operator.hpp"
#include "hsl/symbol.hpp"
#include "hsl/transform.hpp"

namespace hsl {

struct CirculantSpectrum {
  /// xi_m = pi m / S for m = -N/2 .. N/2-1, ascending.
  std::vector<double> xi;
  std::vector<cplx> eigenvalues;
};

/// Eigenvalues of the N x N circulant whose first column is h times the
/// periodized log-kernel, i.e. its DFT.
CirculantSpectrum circulant_spectrum(const LogKernel& k);

/// Atomic kernels: each atom moved to its nearest grid node, with mass
/// c t^{beta-1} placed directly in the column.
CirculantSpectrum circulant_spectrum(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid);

/// Wiener inverse data: lambda A - k * A = k.
struct ResolventKernel {
  cplx lambda;
  LogGrid grid;
  std::vector<cplx> a_values;  // A(s_j)
  std::vector<double> xi;      // DFT frequencies, ascending
  std::vector<cplx> hat_a;     // A^ at xi
  double l1_estimate = 0.0;    // h sum |A(s_j)|
  double distance = 0.0;       // distance from lambda to the discrete symbol curve
};

/// Default grid for resolvent work: wide enough that A decays well inside.
LogGrid default_resolvent_grid();

/// A^ = k^/(lambda - k^) at the DFT nodes of the discrete symbol, so the
/// Fourier identity is exact there. margin defaults to 1e-3 sup|k^|.
ResolventKernel resolvent(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid, cplx lambda,
                          std::optional<double> margin = std::nullopt);

struct ResolventResidual {
  /// max_j |lambda A_j - (k *circ A)_j - k_j| with the periodized kernel.
  double circulant = 0.0;
  /// Same with the linear (non-periodized) convolution, over |s_j| <= S/2.
  double linear_interior = 0.0;
};

ResolventResidual resolvent_residual(const ResolventKernel& r, const LogKernel& k);

/// psi(t_j) = A(ln t_j) t_j^{-beta} on t_j = e^{s_j}, as a sampled kernel.
KernelSpec psi_kernel(const ResolventKernel& r, const SpaceParams& sp);

/// sup_xi 1/|lambda - k^(xi)| (with the limit 1/|lambda| for non-atomic
/// kernels), the L2 norm of the resolvent; p must be 2.
double resolvent_norm_l2(const KernelSpec& kernel, const SpaceParams& sp, cplx lambda);

/// Relative error ||composition f - f|| / ||f|| of the two-sided inverse
/// (1/lambda)(I + H_psi)(lambda I - H_phi) (or the reverse order) on a
/// function supported in [x_lo, x_hi] with x_lo > 0, measured on a geometric
/// window around the support.
double inverse_composition_error(const KernelSpec& kernel, const SpaceParams& sp, const ResolventKernel& r,
                                 const KernelSpec& psi, const FunctionHandle& f, double x_lo, double x_hi,
                                 bool resolvent_last);

struct VerifyOptions {
  double tol = 1e-4;
  /// Grid doubling (S and N together, h fixed) stops at this size.
  std::size_t max_N = std::size_t(1) << 20;
  bool refine = true;
};

struct SpectralReport {
  std::string kernel_id;
  double p = 2.0;
  double a = 0.0;
  SpaceKind kind = SpaceKind::LebesgueLine;
  LogGrid grid{20.0, 16384};  // grid of the final level
  std::vector<double> eig_xi;
  std::vector<cplx> eigenvalues;
  SymbolCurve curve;
  double xi_far = 0.0;           // curve sampled on [-xi_far, xi_far], closed through 0 beyond
  double inclusion_distance = 0.0;  // eigenvalues -> curve
  double coverage_distance = 0.0;   // curve -> eigenvalue polyline
  double hausdorff_distance = 0.0;
  double sup_modulus = 0.0;
  double moment_signed_abs = 0.0;
  double lower_norm_bound = 0.0;
  double upper_norm_bound = 0.0;
  int levels = 1;
  bool inclusion_only = false;  // atomic kernels: only eigenvalues -> curve is asserted
  bool pass = false;
};

SpectralReport spectral_verify(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid,
                               const VerifyOptions& opt = {});

/// Symbol samples covering the whole curve: sinh-spaced nodes refined until
/// each chord deviates from the curve midpoint by less than chord_tol.
SymbolCurve adaptive_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, double xi_far, double chord_tol,
                                  std::size_t max_nodes = std::size_t(1) << 17);

}  // namespace hsl
