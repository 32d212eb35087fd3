#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "hsl/approx_eigen.hpp"
#include "hsl/errors.hpp"
#include "hsl/spectra.hpp"

using namespace hsl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const SpaceParams h2(2, 0, SpaceKind::HardyBoundary);
const KernelSpec ces1 = KernelSpec::cesaro(1.0);
const cplx I(0, 1);

// Residual pinned from the first run at eps = 1e-3, xi = 0 (0.0675).
constexpr double kPinnedResidual = 0.07;
}  // namespace

TEST_CASE("test functions") {
  CHECK(std::abs(test_function({0.5, 0.0, h2})(0.0) - (-I)) < 1e-15);
  for (auto [eps, xi] : {std::pair{0.3, 0.0}, {0.1, 2.0}, {0.9, -1.5}}) {
    const SpaceParams sp(3, 0.5, SpaceKind::HardyBoundary);
    const auto f = test_function({eps, xi, sp});
    const double b = sp.beta();
    CHECK_THAT(std::abs(f(I)), WithinRel(std::pow(2.0, -b - eps) * std::exp(-xi * M_PI / 2), 1e-13));
    const auto f0 = test_function({eps, 0.0, sp});
    for (cplx z : {cplx(-4, 0.1), cplx(0, 0), cplx(2, 5)})
      CHECK_THAT(std::abs(f(z)), WithinRel(std::abs(f0(z)) * std::exp(-xi * std::arg(z + I)), 1e-13));
  }
  CHECK_THROWS_AS(test_function({1.0, 0.0, h2}), Error);
  CHECK_THROWS_AS(test_function({0.0, 0.0, h2}), Error);
}

TEST_CASE("norm asymptotics") {
  const auto rows = norm_asymptotics({0.5, 0.1, 0.01}, 0.0, h2);
  REQUIRE(rows.size() == 3);
  CHECK_THAT(rows[0].norm * rows[0].norm, WithinRel(M_PI, 1e-8));
  CHECK_THAT(rows[0].scaled, WithinRel(std::sqrt(M_PI / 2), 1e-8));
  for (const auto& r : rows) {
    const double sq = std::sqrt(M_PI) * std::tgamma(r.epsilon) / std::tgamma(r.epsilon + 0.5);
    CHECK_THAT(r.norm * r.norm, WithinRel(sq, 1e-6));
  }
  CHECK(rows[1].scaled / rows[2].scaled < 1.2);
  CHECK(rows[2].scaled / rows[1].scaled < 1.2);

  // Flat area measure (a = 1): int int |z+i|^{-2-2 eps} dA = sqrt(pi) Gamma(eps+1/2) / (2 eps Gamma(1+eps)).
  const SpaceParams b2(2, 1, SpaceKind::BergmanPlane);
  const auto brow = norm_asymptotics({0.5, 0.25}, 0.0, b2);
  for (const auto& r : brow) {
    const double e = r.epsilon;
    CHECK_THAT(r.norm * r.norm, WithinRel(std::sqrt(M_PI) * std::tgamma(e + 0.5) / (2 * e * std::tgamma(1 + e)), 1e-6));
  }
  CHECK_THAT(brow[0].scaled, WithinRel(1.0, 1e-6));
}

TEST_CASE("eigen residuals") {
  const auto id = KernelSpec::atomic({{1.0, 1.0}});
  for (auto [eps, xi] : {std::pair{0.1, 0.0}, {0.01, 3.0}}) CHECK(eigen_residual(id, {eps, xi, h2}).residual == 0.0);

  for (double xi : {0.0, 1.0, 3.0}) {
    double prev = INFINITY;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const auto r = eigen_residual(ces1, {eps, xi, h2});
      INFO("xi = " << xi << ", eps = " << eps << ", residual = " << r.residual);
      CHECK(r.residual < prev);
      prev = r.residual;
    }
    CHECK(prev < kPinnedResidual);
  }
}

TEST_CASE("norm lower bounds") {
  CHECK_THAT(lower_norm_bound(ces1, h2), WithinAbs(2.0, 1e-10));
  CHECK_THAT(lower_norm_bound(KernelSpec::atomic({{1.0, std::exp(1.0)}}), h2), WithinAbs(std::exp(-0.5), 1e-12));
  CHECK(lower_norm_bound(KernelSpec::zero(), h2) == 0.0);

  const auto b = norm_bounds(ces1, h2);
  CHECK_THAT(b.lower, WithinAbs(2.0, 1e-10));
  CHECK_THAT(b.upper, WithinAbs(2.0, 1e-10));

  const SpaceParams sp(3, 0.5, SpaceKind::LebesgueLine);
  for (const auto& k : {KernelSpec::power_cut({-1.0, 2.0}, 0.5, 3.0), KernelSpec::cesaro({1.0, -1.0}),
                        KernelSpec::sampled({1.0, 2.0, 5.0}, {1.0, -2.0, 0.5}),
                        KernelSpec::atomic({{0.5, 2.0}, {{0, 1}, 0.3}})}) {
    const auto nb = norm_bounds(k, sp);
    CHECK(nb.lower <= nb.upper * (1 + 1e-9));
  }
}

TEST_CASE("symbol values are approximate eigenvalues of the circulant") {
  const LogGrid grid(20 * M_PI, 1 << 15);  // xi = m / 20 on the DFT grid
  const auto eig = circulant_spectrum(log_kernel(ces1, h2, grid));
  for (double xi : {0.0, 1.0, 3.0}) {
    const cplx k = symbol_at(ces1, h2, xi).value;
    double best = INFINITY;
    for (const auto& v : eig.eigenvalues) best = std::min(best, std::abs(v - k));
    CHECK(best < 1e-4);
  }
}

TEST_CASE("empirical L2 norm of the Cesaro operator") {
  const double tol = 1e-6;
  const auto en = empirical_norm(ces1, h2);
  REQUIRE(en.ratios.size() == 20);
  CHECK(en.value >= 2 * (1 - 1e-3) - tol);
  CHECK(en.value <= 2 + tol);
}

TEST_CASE("residual CSV") {
  std::ostringstream os;
  write_residual_csv(os, {{0.1, 3.0, 0.25, 2.0}});
  CHECK(os.str() == "epsilon,xi,residual,norm\n0.10000000000000001,3,0.25,2\n");
}
