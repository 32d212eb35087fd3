#include <catch_amalgamated.hpp>

#include <cmath>

#include "hsl/errors.hpp"
#include "hsl/spectra.hpp"

using namespace hsl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const SpaceParams h2(2, 0, SpaceKind::HardyBoundary);
const KernelSpec ces1 = KernelSpec::cesaro(1.0);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no hsl::Error thrown");
  return ErrorCode::InvalidArgument;
}

FunctionHandle bump_on(double lo, double hi, double beta) {
  return FunctionHandle::callable(
      [=](cplx z) {
        const double x = z.real();
        const double m = 0.5 * (std::log(lo) + std::log(hi)), w = 0.5 * (std::log(hi) - std::log(lo));
        const double q = (std::log(x) - m) / w;
        if (!(std::abs(q) < 1.0)) return cplx(0.0);
        return cplx(std::pow(x, -beta) * std::exp(-1.0 / (1.0 - q * q)));
      },
      FunctionHandle::Support{lo, hi});
}

}  // namespace

TEST_CASE("circulant spectra of simple kernels") {
  const LogGrid grid(4.0, 512);
  for (const auto& v : circulant_spectrum(log_kernel(KernelSpec::zero(), h2, grid)).eigenvalues) CHECK(v == cplx(0));

  const double h = grid.h();
  const auto hat = KernelSpec::sampled({std::exp(-h), 1.0, std::exp(h)}, {0.0, 1.0 / h, 0.0});
  for (const auto& v : circulant_spectrum(log_kernel(hat, h2, grid)).eigenvalues)
    REQUIRE(std::abs(v - 1.0) < h * h);
}

TEST_CASE("circulant eigenvalues are the DFT of the periodized Cesaro samples") {
  // h sum'_{n>=0} e^{-(1/2 + i xi) n h} = (h/2) coth(h (1/2 + i xi) / 2) at every DFT frequency.
  const LogGrid grid(20.0, 1 << 14);
  const auto lk = log_kernel(ces1, h2, grid);
  const auto eig = circulant_spectrum(lk);
  const auto fft = fft_symbol_curve(lk);
  const double h = grid.h();
  double worst = 0, circle = 0;
  for (std::size_t m = 0; m < eig.xi.size(); ++m) {
    const cplx w = 0.5 * h * cplx(0.5, eig.xi[m]);
    const cplx want = 0.5 * h * std::cosh(w) / std::sinh(w);
    worst = std::max(worst, std::abs(eig.eigenvalues[m] - want) / std::max(1.0, std::abs(want)));
    circle = std::max(circle, std::abs(std::abs(eig.eigenvalues[m] - 1.0) - 1.0));
    REQUIRE(eig.eigenvalues[m] == fft.values[m]);
  }
  CHECK(worst < 1e-12);
  CHECK(circle < 1e-5);
}

// Stated target: every eigenvalue within 1e-6 of the closed-form symbol at
// its frequency. Near Nyquist the discrete value is off by about h/pi, so
// this is expected to fail on this grid.
TEST_CASE("circulant eigenvalues match the closed-form symbol to 1e-6") {
  const LogGrid grid(20.0, 1 << 14);
  const auto eig = circulant_spectrum(log_kernel(ces1, h2, grid));
  double worst = 0;
  for (std::size_t m = 0; m < eig.xi.size(); ++m)
    worst = std::max(worst, std::abs(eig.eigenvalues[m] - 1.0 / cplx(0.5, eig.xi[m])));
  INFO("max |lambda_m - k^(xi_m)| = " << worst);
  CHECK(worst < 1e-6);
}

TEST_CASE("Wiener resolvent of the Cesaro kernel") {
  const LogGrid grid = default_resolvent_grid();
  const auto lk = log_kernel(ces1, h2, grid);
  for (cplx lam : {cplx(5), cplx(-1), cplx(0, 3)}) {
    const auto r = resolvent(ces1, h2, grid, lam);
    const auto res = resolvent_residual(r, lk);
    CHECK(res.circulant < 1e-6);
    CHECK(res.linear_interior < 1e-6);
    // Closed form: A(s) = (1/lambda) e^{-(1/2 - 1/lambda) s} for s > 0, 0 for s < 0.
    double worst = 0;
    for (std::size_t j = 0; j < grid.N(); ++j) {
      const double s = grid.node(j);
      if (std::abs(s) < 20 * grid.h() || std::abs(s) > 30) continue;
      const cplx want = s > 0 ? std::exp(-(0.5 - 1.0 / lam) * s) / lam : 0.0;
      worst = std::max(worst, std::abs(r.a_values[j] - want));
    }
    INFO("lambda = " << lam);
    CHECK(worst < 1e-6);
  }

  CHECK(code_of([&] { resolvent(ces1, h2, grid, 2.0); }) == ErrorCode::LambdaOnSpectrum);
  CHECK(code_of([&] { resolvent(ces1, h2, grid, cplx(1, 1)); }) == ErrorCode::LambdaOnSpectrum);
  CHECK(code_of([&] { resolvent(ces1, h2, grid, 0.0); }) == ErrorCode::LambdaZero);
  CHECK(code_of([&] { resolvent(KernelSpec::atomic({{1.0, 1.0}}), h2, grid, 5.0); }) ==
        ErrorCode::AtomicKernelUnsupported);

  const auto zr = resolvent(KernelSpec::zero(), h2, LogGrid(8.0, 1024), 5.0);
  for (const auto& v : zr.a_values) REQUIRE(v == cplx(0));
}

TEST_CASE("psi kernel mass equals the resolvent's l1 estimate") {
  const LogGrid grid(64.0, std::size_t(1) << 19);
  const auto r = resolvent(ces1, h2, grid, 5.0);
  const auto psi = psi_kernel(r, h2);
  CHECK_THAT(moment(psi, h2, MomentMode::Absolute).value.real(), WithinRel(r.l1_estimate, 1e-8));
}

TEST_CASE("two-sided inverse reproduces test functions") {
  const auto r = resolvent(ces1, h2, default_resolvent_grid(), 5.0);
  const auto psi = psi_kernel(r, h2);
  const auto f = bump_on(1.0, 4.0, h2.beta());
  CHECK(inverse_composition_error(ces1, h2, r, psi, f, 1.0, 4.0, true) < 1e-5);
  CHECK(inverse_composition_error(ces1, h2, r, psi, f, 1.0, 4.0, false) < 1e-5);

  const auto zk = KernelSpec::zero();
  const auto zr = resolvent(zk, h2, LogGrid(8.0, 1024), 5.0);
  CHECK(inverse_composition_error(zk, h2, zr, psi_kernel(zr, h2), f, 1.0, 4.0, true) < 1e-14);
}

TEST_CASE("L2 resolvent norms") {
  CHECK_THAT(resolvent_norm_l2(ces1, h2, 3.0), WithinAbs(1.0, 1e-9));
  CHECK_THAT(resolvent_norm_l2(ces1, h2, -1.0), WithinAbs(1.0, 1e-9));
  CHECK_THAT(resolvent_norm_l2(KernelSpec::zero(), h2, 10.0), WithinAbs(0.1, 1e-15));
  CHECK_THROWS_AS(resolvent_norm_l2(ces1, SpaceParams(3, 0, SpaceKind::HardyBoundary), 3.0), Error);

  const auto curve = symbol_curve(ces1, h2, linspace(-50, 50, 200001), SymbolMethod::ClosedForm);
  for (cplx lam : {cplx(3), cplx(-0.5, 0.5), cplx(1, 1.5), cplx(2.2, -0.3)})
    CHECK_THAT(resolvent_norm_l2(ces1, h2, lam) * curve_distance(curve, lam).distance, WithinAbs(1.0, 1e-6));
}

TEST_CASE("spectrum versus symbol curve") {
  VerifyOptions opt;
  opt.tol = 1e-5;
  const auto rep = spectral_verify(ces1, h2, LogGrid(32.0, 1 << 14), opt);
  CHECK(rep.pass);
  CHECK(rep.hausdorff_distance < 1e-5);
  CHECK_THAT(rep.lower_norm_bound, WithinAbs(2.0, 1e-8));
  CHECK_THAT(rep.upper_norm_bound, WithinAbs(2.0, 1e-8));

  const auto id = spectral_verify(KernelSpec::atomic({{1.0, 1.0}}), h2, LogGrid(20.0, 1 << 10));
  CHECK(id.pass);
  CHECK(id.hausdorff_distance == 0.0);
  for (const auto& v : id.eigenvalues) REQUIRE(v == cplx(1.0));

  const double e = std::exp(1.0);
  const auto two = spectral_verify(KernelSpec::atomic({{0.5, e}, {0.5, 1 / e}}), h2, LogGrid(20.0, 1 << 14));
  CHECK(two.inclusion_only);
  CHECK(two.pass);
  CHECK(two.inclusion_distance < 1e-4);
}
