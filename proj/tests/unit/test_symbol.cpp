#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <sstream>

#include "hsl/errors.hpp"
#include "hsl/symbol.hpp"

using namespace hsl;
using Catch::Matchers::WithinAbs;

namespace {
const SpaceParams h2(2, 0, SpaceKind::HardyBoundary);
const KernelSpec ces1 = KernelSpec::cesaro(1.0);
}  // namespace

TEST_CASE("symbol values") {
  CHECK(std::abs(symbol_at(ces1, h2, 0.0).value - cplx(2.0)) < 1e-15);
  CHECK(std::abs(symbol_at(ces1, h2, 1.0).value - cplx(0.4, -0.8)) < 1e-15);
  for (double xi : {-7.0, 0.0, 2.5})
    CHECK(symbol_at(KernelSpec::atomic({{1.0, 1.0}}), SpaceParams(3, 0.5, SpaceKind::LebesgueLine), xi).value ==
          cplx(1.0));
}

TEST_CASE("quadrature symbol against the closed form and an exp_sinh oracle") {
  for (double xi : {0.0, 0.3, 1.0, 5.0, 40.0, 180.0}) {
    const auto q = symbol_at(ces1, h2, xi, SymbolMethod::Quadrature);
    CHECK(std::abs(q.value - 1.0 / cplx(0.5, xi)) < 1e-9);
  }
  // PowerCut t^{-2} on [1, inf) at beta = 1/2: k(s) = e^{-3s/2}, symbol 1/(3/2 + i xi).
  const auto pc = KernelSpec::power_cut(-2.0, 1.0, INFINITY);
  boost::math::quadrature::exp_sinh<double> es;
  for (double xi : {0.0, 2.0}) {
    const double re = es.integrate([&](double s) { return std::exp(-1.5 * s) * std::cos(xi * s); });
    const double im = -es.integrate([&](double s) { return std::exp(-1.5 * s) * std::sin(xi * s); });
    CHECK(std::abs(symbol_at(pc, h2, xi).value - cplx(re, im)) < 1e-9);
  }
}

TEST_CASE("curve geometry") {
  const auto xi = linspace(-200, 200, 4001);  // step 0.1, through 0
  const auto c = symbol_curve(ces1, h2, xi, SymbolMethod::Quadrature);
  double dev = 0;
  for (const auto& v : c.values) dev = std::max(dev, std::abs(std::abs(v - 1.0) - 1.0));
  CHECK(dev < 1e-9);
  CHECK_THAT(c.sup_modulus, WithinAbs(2.0, 1e-9));
  CHECK(c.closure_includes_zero);

  const auto at = symbol_curve(KernelSpec::atomic({{1.0, std::exp(1.0)}}), h2, linspace(-50, 50, 1001));
  for (const auto& v : at.values) REQUIRE_THAT(std::abs(v), WithinAbs(std::exp(-0.5), 1e-12));
  CHECK_FALSE(at.closure_includes_zero);
}

TEST_CASE("curve distance") {
  const auto c = symbol_curve(ces1, h2, linspace(-200, 200, 4001), SymbolMethod::ClosedForm);
  CHECK_THAT(curve_distance(c, 3.0).distance, WithinAbs(1.0, 1e-9));
  const auto on = curve_distance(c, 2.0);
  CHECK(on.distance < 1e-12);
  CHECK_THAT(on.argmin_xi, WithinAbs(0.0, 1e-9));
  CHECK(curve_distance(c, 0.0).distance == 0.0);
  // inside the circle; the local quadratic needs a fine sampling there
  const auto fine = symbol_curve(ces1, h2, linspace(-50, 50, 200001), SymbolMethod::ClosedForm);
  const auto in = curve_distance(fine, {1.0, 0.5});
  CHECK_THAT(in.distance, WithinAbs(0.5, 1e-9));
  CHECK_THAT(in.argmin_xi, WithinAbs(-0.5, 1e-6));
}

TEST_CASE("property: conjugate symmetry, Riemann-Lebesgue, boundedness") {
  const SpaceParams sp(2, 1, SpaceKind::LebesgueLine);
  const auto smp = KernelSpec::sampled({0.5, 1.0, 2.0, 4.0}, {0.0, 1.0, 0.5, 0.0});
  const auto pc = KernelSpec::power_cut(-2.0, 1.0, 5.0);
  for (const auto& k : {smp, pc, KernelSpec::cesaro(2.0)}) {
    const double absm = moment(k, sp, MomentMode::Absolute).value.real();
    double env = INFINITY;
    for (double xi : {0.0, 0.7, 3.0, 11.0, 40.0, 150.0, 600.0}) {
      const auto p = symbol_at(k, sp, xi), m = symbol_at(k, sp, -xi);
      CHECK(std::abs(p.value - std::conj(m.value)) <= p.err + m.err + 1e-14);
      CHECK(std::abs(p.value) <= absm + p.err + 1e-14);
      if (xi >= 11.0) {
        CHECK(std::abs(p.value) < env);
        env = std::abs(p.value) * 1.01;
      }
    }
  }
  const auto atoms = KernelSpec::atomic({{1.0, 0.5}, {2.0, 3.0}});
  for (double xi : {0.3, 9.0}) CHECK(symbol_at(atoms, sp, -xi).value == std::conj(symbol_at(atoms, sp, xi).value));
}

TEST_CASE("FFT and quadrature curves agree within their error estimates") {
  const LogGrid grid(20.0, 1 << 14);
  const auto pc = KernelSpec::power_cut({-2.0, 0.5}, 1.0, 8.0);
  std::vector<double> xi;
  for (long m : {-64L, -5L, 0L, 3L, 40L, 500L}) xi.push_back(grid.frequency(m));
  const auto f = fft_symbol_curve(pc, h2, grid, xi);
  const auto q = symbol_curve(pc, h2, xi, SymbolMethod::Quadrature);
  for (std::size_t i = 0; i < xi.size(); ++i) CHECK(std::abs(f.values[i] - q.values[i]) <= f.err[i] + q.err[i]);
  CHECK_THROWS_AS(fft_symbol_curve(pc, h2, grid, {0.123}), Error);
}

TEST_CASE("curve CSV") {
  std::ostringstream os;
  write_curve_csv(os, symbol_curve(ces1, h2, {1.0}, SymbolMethod::ClosedForm));
  CHECK(os.str() == "xi,re,im,err\n1,0.40000000000000002,-0.80000000000000004,0\n");
}
