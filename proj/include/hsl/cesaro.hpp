#pragma once

#include "hsl/space.hpp"
#include "hsl/transform.hpp"

namespace hsl {

/// The symbol 1/(i xi - beta + nu) traces the circle |z - c| = c through 0,
/// c = p / (2 (p Re nu - a - 1)); the operator norm is 2c.
struct CesaroSpectrum {
  cplx nu;
  SpaceParams sp;
  double center;
  double radius;
  double norm;
  /// p / (Re nu - a - 1): the norm as it is sometimes printed, kept for
  /// comparison (infinite when Re nu = a + 1). Not the operator norm.
  double displayed_norm;
};

/// UnboundedRegime unless p Re nu > a + 1.
CesaroSpectrum cesaro_spectrum(cplx nu, const SpaceParams& sp);

struct CesaroReport {
  CesaroSpectrum spectrum;
  LogGrid grid;
  double tol;
  double symbol_deviation;  // (i) closed form vs quadrature, max over nodes
  double circle_deviation;  // (ii) max | |k^ - c| - r | over the quadrature curve
  double moment_deviation;  // (iii) |Absolute moment - norm|
  double eigen_deviation;   // (iv) max | |lambda_m - c| - r | over circulant eigenvalues
  bool symbol_ok, circle_ok, moment_ok, eigen_ok;
  bool pass;
};

/// Checks on xi_count nodes spread over [-xi_max, xi_max].
CesaroReport verify_cesaro(cplx nu, const SpaceParams& sp, const LogGrid& grid, double tol,
                           std::size_t xi_count = 100, double xi_max = 200.0);

}  // namespace hsl
