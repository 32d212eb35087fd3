#include "hsl/approx_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/math/tools/minima.hpp>

#include "hsl/errors.hpp"
#include "hsl/parallel.hpp"
#include "hsl/symbol.hpp"

namespace hsl {

FunctionHandle test_function(const TestFunctionParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw Error(ErrorCode::InvalidArgument, "test functions need 0 < epsilon < 1");
  const cplx w(-params.sp.beta() - params.epsilon, params.xi);
  return FunctionHandle::callable([w](cplx z) { return std::pow(z + cplx(0.0, 1.0), w); });
}

NormOptions test_function_norm_options() {
  NormOptions o;
  o.X = 1e20;
  o.quad = {1e-11, 1e-300, 24};
  return o;
}

std::vector<AsymptoticsRow> norm_asymptotics(const std::vector<double>& epsilons, double xi, const SpaceParams& sp,
                                             const NormOptions& opt) {
  std::vector<AsymptoticsRow> rows;
  for (double e : epsilons) {
    const double n = norm(test_function({e, xi, sp}), sp, opt).value;
    rows.push_back({e, n, n * std::pow(e, 1.0 / sp.p())});
  }
  return rows;
}

ResidualRow eigen_residual(const KernelSpec& kernel, const TestFunctionParams& params, const NormOptions& opt) {
  const SpaceParams& sp = params.sp;
  const cplx khat = symbol_at(kernel, sp, params.xi).value;
  const FunctionHandle f = test_function(params);
  const FunctionHandle hf = applied(kernel, f, sp);
  const FunctionHandle diff = FunctionHandle::callable([&](cplx z) { return hf(z) - khat * f(z); });
  const double nf = norm(f, sp, opt).value;
  const double nd = norm(diff, sp, opt).value;
  return {params.epsilon, params.xi, nd / nf, nf};
}

SymbolSup symbol_sup(const KernelSpec& kernel, const SpaceParams& sp) {
  std::vector<double> xi;
  if (kernel.is_atomic()) {
    double spread = 1e-3;
    for (const auto& a : std::get<AtomicKernel>(kernel.variant()).atoms)
      spread = std::max(spread, std::abs(std::log(a.position)));
    xi = linspace(-200.0, 200.0, std::size_t(std::min(4e5, 400.0 * spread / 0.01)) + 1);
  } else {
    const double umax = std::asinh(1e4);
    for (int i = -2000; i <= 2000; ++i) xi.push_back(std::sinh(umax * i / 2000.0));
  }
  const SymbolCurve c = symbol_curve(kernel, sp, xi);
  std::vector<double> mod(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) mod[i] = std::abs(c.values[i]);
  std::vector<std::size_t> order(xi.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(64, order.size()), order.end(),
                    [&](std::size_t x, std::size_t y) { return mod[x] > mod[y]; });
  SymbolSup best{mod[order[0]], xi[order[0]]};
  int refined = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(64, order.size()) && refined < 4; ++k) {
    const std::size_t i = order[k];
    const bool local = (i == 0 || mod[i] >= mod[i - 1]) && (i + 1 == xi.size() || mod[i] >= mod[i + 1]);
    if (!local || i == 0 || i + 1 == xi.size()) continue;
    ++refined;
    auto r = boost::math::tools::brent_find_minima(
        [&](double x) { return -std::abs(symbol_at(kernel, sp, x).value); }, xi[i - 1], xi[i + 1], 52);
    if (-r.second > best.value) best = {-r.second, r.first};
  }
  return best;
}

double lower_norm_bound(const KernelSpec& kernel, const SpaceParams& sp) { return symbol_sup(kernel, sp).value; }

NormBounds norm_bounds(const KernelSpec& kernel, const SpaceParams& sp) {
  NormBounds b;
  b.sup_modulus = lower_norm_bound(kernel, sp);
  b.moment_signed_abs = std::abs(moment(kernel, sp, MomentMode::Signed).value);
  b.lower = std::max(b.sup_modulus, b.moment_signed_abs);
  b.upper = moment(kernel, sp, MomentMode::Absolute).value.real();
  return b;
}

EmpiricalNorm empirical_norm(const KernelSpec& kernel, const SpaceParams& sp, std::size_t count, double epsilon,
                             const NormOptions& opt) {
  static const double offsets[] = {0.0, 0.02, -0.02, 0.05, -0.05, 0.1, -0.1, 0.2, -0.2, 0.3,
                                   -0.3, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0, 8.0};
  const double center = symbol_sup(kernel, sp).argmax_xi;
  EmpiricalNorm out{0.0, {}, {}};
  for (std::size_t j = 0; j < count; ++j) {
    const double off = j < std::size(offsets) ? offsets[j] : 8.0 * double(j) / double(std::size(offsets));
    const double xi = center + off;
    const FunctionHandle f = test_function({epsilon, xi, sp});
    const double nf = norm(f, sp, opt).value;
    const double nh = norm(applied(kernel, f, sp), sp, opt).value;
    out.xi.push_back(xi);
    out.ratios.push_back(nh / nf);
    out.value = std::max(out.value, nh / nf);
  }
  return out;
}

void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows) {
  os << "epsilon,xi,residual,norm\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.epsilon, r.xi, r.residual, r.norm);
    os << buf;
  }
}

}  // namespace hsl
