#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "hsl/errors.hpp"
#include "hsl/kernel.hpp"

using namespace hsl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const SpaceParams hardy2{2.0, 0.0, SpaceKind::HardyBoundary};

// Independent oracle: integrate |phi(t)| t^{beta-1} piece by piece in t,
// with no log substitution.
double abs_moment_oracle(const KernelSpec& k, double beta, double lo, double hi) {
  auto f = [&](double t) { return std::abs(k.phi_log(std::log(t))) * std::pow(t, beta - 1.0); };
  if (std::isinf(hi)) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double u) { return f(lo + u); });
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no hsl::Error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("moments of closed-form kernels") {
  CHECK_THAT(moment(KernelSpec::cesaro(1.0), hardy2, MomentMode::Absolute).value.real(), WithinAbs(2.0, 1e-10));
  CHECK_THAT(moment(KernelSpec::cesaro(2.0), SpaceParams(1, 0, SpaceKind::HardyBoundary), MomentMode::Absolute)
                 .value.real(),
             WithinAbs(1.0, 1e-10));

  const auto unit = moment(KernelSpec::atomic({{1.0, 1.0}}), SpaceParams(3, 0.5, SpaceKind::LebesgueLine),
                           MomentMode::Signed);
  CHECK(unit.value == cplx(1.0));
  CHECK(unit.exact);
  CHECK(unit.abs_err == 0.0);
}

TEST_CASE("moments agree with a direct quadrature in t") {
  const SpaceParams sp(2.0, 1.0, SpaceKind::LebesgueLine);  // beta = 1
  const auto pc = KernelSpec::power_cut({-2.5, 1.0}, 0.5, 7.0);
  CHECK_THAT(moment(pc, sp, MomentMode::Absolute).value.real(),
             WithinRel(abs_moment_oracle(pc, sp.beta(), 0.5, 7.0), 1e-9));

  const auto ces = KernelSpec::cesaro({2.0, 1.0});
  CHECK_THAT(moment(ces, sp, MomentMode::Absolute).value.real(),
             WithinRel(abs_moment_oracle(ces, sp.beta(), 1.0, INFINITY), 1e-9));

  const auto smp = KernelSpec::sampled({0.5, 1.0, 2.0, 3.0}, {0.0, {1.0, -1.0}, 2.0, 0.0});
  CHECK_THAT(moment(smp, hardy2, MomentMode::Absolute).value.real(),
             WithinRel(abs_moment_oracle(smp, hardy2.beta(), 0.5, 1.0) +
                           abs_moment_oracle(smp, hardy2.beta(), 1.0, 2.0) +
                           abs_moment_oracle(smp, hardy2.beta(), 2.0, 3.0),
                       1e-9));
}

TEST_CASE("truncation") {
  const auto ces = KernelSpec::cesaro(1.0);
  CHECK_THAT(moment(truncate(ces, 0.25), hardy2, MomentMode::Absolute).value.real(), WithinAbs(1.0, 1e-10));

  const auto atom = KernelSpec::atomic({{1.0, 1.0}});
  const auto kept = truncate(atom, 0.5);
  REQUIRE(kept.is_atomic());
  CHECK(std::get<AtomicKernel>(kept.variant()).atoms.size() == 1);
  CHECK(moment(kept, hardy2, MomentMode::Signed).value == cplx(1.0));

  const auto far = KernelSpec::atomic({{1.0, 1.0}, {2.0, 3.0}});
  CHECK(std::get<AtomicKernel>(truncate(far, 0.5).variant()).atoms.size() == 1);

  const double full = moment(ces, hardy2, MomentMode::Absolute).value.real();
  const double d09 = full - moment(truncate(ces, 0.9), hardy2, MomentMode::Absolute).value.real();
  const double d01 = full - moment(truncate(ces, 0.1), hardy2, MomentMode::Absolute).value.real();
  CHECK(d01 < d09);
  // 2 t^{-1/2} at 1/delta
  CHECK_THAT(d01, WithinAbs(2.0 / std::sqrt(10.0), 1e-10));
}

TEST_CASE("property: |signed moment| <= absolute moment, truncation is monotone") {
  auto rng = Catch::Generators::random(-3.0, 3.0);
  const SpaceParams sp(1.5, 0.5, SpaceKind::LebesgueLine);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> t{0.3};
    std::vector<cplx> v{0.0};
    for (int i = 0; i < 6; ++i) {
      t.push_back(t.back() + 0.2 + std::abs(rng.get()));
      rng.next();
      const double re = rng.get();
      rng.next();
      v.emplace_back(re, rng.get());
      rng.next();
    }
    const auto k = KernelSpec::sampled(t, v);
    const double absm = moment(k, sp, MomentMode::Absolute).value.real();
    CHECK(std::abs(moment(k, sp, MomentMode::Signed).value) <= absm * (1 + 1e-12));

    double prev = INFINITY;
    for (double delta : {0.9, 0.7, 0.5, 0.3, 0.1, 0.01}) {
      const double m = moment(truncate(k, delta), sp, MomentMode::Absolute).value.real();
      CHECK(m <= absm * (1 + 1e-12));
      const double gap = absm - m;
      CHECK(gap <= prev + 1e-12);
      prev = gap;
    }
  }
}

TEST_CASE("invalid kernels and moments") {
  CHECK(code_of([] { KernelSpec::power_cut(0.0, 0.0, 1.0); }) == ErrorCode::NonPositiveSupport);
  CHECK(code_of([] { KernelSpec::sampled({-1.0, 1.0}, {1.0, 1.0}); }) == ErrorCode::NonPositiveSupport);
  CHECK(code_of([] { KernelSpec::atomic({{1.0, 0.0}}); }) == ErrorCode::NonPositiveSupport);
  CHECK(code_of([] { KernelSpec::atomic({{1.0, 2.0}, {3.0, 2.0}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { truncate(KernelSpec::cesaro(1.0), 1.0); }) == ErrorCode::InvalidDelta);
  CHECK(code_of([] { truncate(KernelSpec::cesaro(1.0), 0.0); }) == ErrorCode::InvalidDelta);
  // p Re nu = a + 1
  CHECK(code_of([] { moment(KernelSpec::cesaro(0.5), hardy2, MomentMode::Absolute); }) ==
        ErrorCode::DivergentMoment);
  CHECK(code_of([] { SpaceParams(0.5, 0.0, SpaceKind::LebesgueLine); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { SpaceParams(2.0, -1.0, SpaceKind::HardyBoundary); }) == ErrorCode::NonintegrableWeight);
  CHECK(code_of([] { SpaceParams(2.0, 0.0, SpaceKind::BergmanPlane); }) == ErrorCode::NonintegrableWeight);
}

TEST_CASE("nonnegative mass flag") {
  CHECK(KernelSpec::atomic({{1.0, 1.0}, {0.5, 2.0}}).nonnegative_masses());
  CHECK_FALSE(KernelSpec::atomic({{{1.0, 1.0}, 1.0}}).nonnegative_masses());
  CHECK_FALSE(KernelSpec::atomic({{-1.0, 1.0}}).nonnegative_masses());
}
