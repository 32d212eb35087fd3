#include "hsl/cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsl/errors.hpp"
#include "hsl/kernel.hpp"
#include "hsl/spectra.hpp"
#include "hsl/symbol.hpp"

namespace hsl {

CesaroSpectrum cesaro_spectrum(cplx nu, const SpaceParams& sp) {
  const double p = sp.p(), a = sp.a();
  const double gap = p * nu.real() - a - 1.0;
  if (sp.infinite_p() || !(gap > 0.0))
    throw Error(ErrorCode::UnboundedRegime, "the Cesaro operator needs p Re(nu) > a + 1");
  const double c = p / (2.0 * gap);
  const double shown = nu.real() - a - 1.0;
  return {nu, sp, c, c, 2.0 * c,
          shown == 0.0 ? std::numeric_limits<double>::infinity() : p / shown};
}

CesaroReport verify_cesaro(cplx nu, const SpaceParams& sp, const LogGrid& grid, double tol, std::size_t xi_count,
                           double xi_max) {
  const CesaroSpectrum cs = cesaro_spectrum(nu, sp);
  const KernelSpec k = KernelSpec::cesaro(nu);
  CesaroReport r{cs, grid, tol, 0, 0, 0, 0, false, false, false, false, false};

  const std::vector<double> xi = linspace(-xi_max, xi_max, xi_count);
  const SymbolCurve closed = symbol_curve(k, sp, xi, SymbolMethod::ClosedForm);
  const SymbolCurve quad = symbol_curve(k, sp, xi, SymbolMethod::Quadrature);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    r.symbol_deviation = std::max(r.symbol_deviation, std::abs(closed.values[i] - quad.values[i]));
    r.circle_deviation =
        std::max(r.circle_deviation, std::abs(std::abs(quad.values[i] - cs.center) - cs.radius));
  }
  r.moment_deviation = std::abs(moment(k, sp, MomentMode::Absolute).value.real() - cs.norm);
  const CirculantSpectrum eig = circulant_spectrum(log_kernel(k, sp, grid));
  for (const auto& v : eig.eigenvalues)
    r.eigen_deviation = std::max(r.eigen_deviation, std::abs(std::abs(v - cs.center) - cs.radius));

  r.symbol_ok = r.symbol_deviation < tol;
  r.circle_ok = r.circle_deviation < tol;
  r.moment_ok = r.moment_deviation < tol;
  r.eigen_ok = r.eigen_deviation < tol;
  r.pass = r.symbol_ok && r.circle_ok && r.moment_ok && r.eigen_ok;
  return r;
}

}  // namespace hsl
