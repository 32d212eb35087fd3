#include "hsl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>
#include <boost/math/tools/minima.hpp>

#include "hsl/errors.hpp"
#include "hsl/fft.hpp"
#include "hsl/parallel.hpp"

namespace hsl {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using Pt = bg::model::point<double, 2, bg::cs::cartesian>;
using Seg = bg::model::segment<Pt>;
using Tree = bgi::rtree<Seg, bgi::quadratic<16>>;

Pt pt(cplx z) { return Pt(z.real(), z.imag()); }

Tree polyline_tree(const std::vector<cplx>& v, bool closed) {
  std::vector<Seg> segs;
  segs.reserve(v.size() + 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) segs.emplace_back(pt(v[i]), pt(v[i + 1]));
  if (closed && v.size() > 1) segs.emplace_back(pt(v.back()), pt(v.front()));
  if (segs.empty() && !v.empty()) segs.emplace_back(pt(v[0]), pt(v[0]));
  return Tree(segs.begin(), segs.end());
}

// max over points of the distance to the polyline held in the tree
double max_distance(const std::vector<cplx>& points, const Tree& tree) {
  double worst = 0.0;
#pragma omp parallel for num_threads(thread_count()) schedule(static) reduction(max : worst)
  for (long i = 0; i < long(points.size()); ++i) {
    const Pt p = pt(points[std::size_t(i)]);
    std::vector<Seg> hit;
    tree.query(bgi::nearest(p, 1), std::back_inserter(hit));
    if (!hit.empty()) worst = std::max(worst, double(bg::distance(p, hit.front())));
  }
  return worst;
}

// Ascending m = -N/2..N/2-1 back to FFT order (bin m at index m mod N).
std::vector<cplx> uncentered(const std::vector<cplx>& v) {
  const std::size_t N = v.size();
  std::vector<cplx> out(N);
  for (std::size_t i = 0; i < N; ++i) out[(i + N / 2) % N] = v[i];
  return out;
}

}  // namespace

CirculantSpectrum circulant_spectrum(const LogKernel& k) {
  const SymbolCurve c = fft_symbol_curve(k);
  return {c.xi, c.values};
}

CirculantSpectrum circulant_spectrum(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid) {
  const SymbolCurve c = fft_symbol_curve(kernel, sp, grid);
  return {c.xi, c.values};
}

LogGrid default_resolvent_grid() { return LogGrid(64.0, std::size_t(1) << 17); }

ResolventKernel resolvent(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid, cplx lambda,
                          std::optional<double> margin) {
  if (lambda == cplx(0.0)) throw Error(ErrorCode::LambdaZero, "lambda = 0 has no resolvent here");
  if (kernel.is_atomic())
    throw Error(ErrorCode::AtomicKernelUnsupported, "the resolvent of an atomic kernel is not an L1 function");
  if (margin && !(*margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be > 0");
  const LogKernel k = log_kernel(kernel, sp, grid);
  const SymbolCurve curve = fft_symbol_curve(k);
  const double m = margin.value_or(std::max(1e-3 * curve.sup_modulus, 1e-12));
  const CurveDistance d = curve_distance(curve, lambda);
  if (d.distance < m) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "lambda lies within %.3g of the symbol curve (margin %.3g)", d.distance, m);
    throw Error(ErrorCode::LambdaOnSpectrum, msg);
  }

  const std::size_t N = grid.N();
  ResolventKernel r{lambda, grid, {}, curve.xi, std::vector<cplx>(N), 0.0, d.distance};
  for (std::size_t i = 0; i < N; ++i) r.hat_a[i] = curve.values[i] / (lambda - curve.values[i]);

  // Back to lag order, invert, and unfold to grid order: A(s_j) = col[(j + N/2) mod N] / h.
  std::vector<cplx> col = uncentered(r.hat_a);
  fft::transform(col, true);
  r.a_values.resize(N);
  const double scale = 1.0 / (double(N) * grid.h());
  for (std::size_t j = 0; j < N; ++j) r.a_values[j] = col[(j + N / 2) % N] * scale;
  double l1 = 0.0;
  for (const auto& v : r.a_values) l1 += std::abs(v);
  r.l1_estimate = grid.h() * l1;
  return r;
}

ResolventResidual resolvent_residual(const ResolventKernel& r, const LogKernel& k) {
  if (!(r.grid == k.grid)) throw Error(ErrorCode::GridMismatch, "resolvent and kernel grids differ");
  const std::size_t N = r.grid.N();
  const double h = r.grid.h();
  // circular convolution over grid positions; the kernel is indexed by lag
  std::vector<cplx> a = r.a_values, b(N);
  for (std::size_t l = 0; l < N; ++l) b[l] = k.periodic[(l + N / 2) % N];
  fft::transform(a, false);
  fft::transform(b, false);
  for (std::size_t i = 0; i < N; ++i) a[i] *= b[i];
  fft::transform(a, true);
  ResolventResidual out;
  for (std::size_t i = 0; i < N; ++i) {
    const cplx conv = a[i] * (h / double(N));
    out.circulant = std::max(out.circulant, std::abs(r.lambda * r.a_values[i] - conv - k.periodic[i]));
  }
  const std::vector<cplx> lin = apply_convolution(k, r.a_values);
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(r.grid.node(i)) > 0.5 * r.grid.S()) continue;
    out.linear_interior =
        std::max(out.linear_interior, std::abs(r.lambda * r.a_values[i] - lin[i] - k.samples[i]));
  }
  return out;
}

KernelSpec psi_kernel(const ResolventKernel& r, const SpaceParams& sp) {
  const std::size_t N = r.grid.N();
  std::vector<double> t(N);
  std::vector<cplx> v(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double s = r.grid.node(j);
    t[j] = std::exp(s);
    v[j] = r.a_values[j] * std::exp(-sp.beta() * s);
  }
  return KernelSpec::sampled(std::move(t), std::move(v));
}

double resolvent_norm_l2(const KernelSpec& kernel, const SpaceParams& sp, cplx lambda) {
  if (sp.p() != 2.0) throw Error(ErrorCode::InvalidArgument, "the L2 resolvent norm needs p = 2");
  if (lambda == cplx(0.0)) throw Error(ErrorCode::LambdaZero, "lambda = 0");
  std::vector<double> xi;
  if (kernel.is_atomic()) {
    double spread = 1.0;
    for (const auto& a : std::get<AtomicKernel>(kernel.variant()).atoms)
      spread = std::max(spread, std::abs(std::log(a.position)));
    xi = linspace(-200.0, 200.0, std::size_t(std::min(4e5, 400.0 * spread / 0.01)) + 1);
  } else {
    const double umax = std::asinh(1e4);
    for (int i = -2000; i <= 2000; ++i) xi.push_back(std::sinh(umax * i / 2000.0));
  }
  const SymbolCurve c = symbol_curve(kernel, sp, xi);
  auto inv = [&](double x) { return 1.0 / std::abs(lambda - symbol_at(kernel, sp, x).value); };
  std::vector<std::size_t> order(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) order[i] = i;
  std::vector<double> vals(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) vals[i] = 1.0 / std::abs(lambda - c.values[i]);
  double best = kernel.is_atomic() ? 0.0 : 1.0 / std::abs(lambda);
  // refine the strongest local maxima
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
  int refined = 0;
  for (std::size_t idx : order) {
    if (refined >= 4) break;
    const bool local = (idx == 0 || vals[idx] >= vals[idx - 1]) && (idx + 1 == xi.size() || vals[idx] >= vals[idx + 1]);
    best = std::max(best, vals[idx]);
    if (!std::isfinite(vals[idx]))
      throw Error(ErrorCode::LambdaOnSpectrum, "lambda lies on the symbol curve");
    if (!local) continue;
    const double lo = xi[idx == 0 ? 0 : idx - 1], hi = xi[std::min(idx + 1, xi.size() - 1)];
    if (hi > lo) {
      auto r = boost::math::tools::brent_find_minima([&](double x) { return -inv(x); }, lo, hi, 52);
      best = std::max(best, -r.second);
    }
    ++refined;
  }
  if (!std::isfinite(best) || best > 1e12)
    throw Error(ErrorCode::LambdaOnSpectrum, "lambda lies on the symbol curve");
  return best;
}

namespace {

// Sum of |f|^p |x|^a over a geometric window, trapezoid in u = ln x.
double window_norm_p(const std::vector<double>& u, const std::vector<cplx>& v, const SpaceParams& sp) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double du = u[i + 1] - u[i];
    auto term = [&](std::size_t j) { return std::pow(std::abs(v[j]), sp.p()) * std::exp((sp.a() + 1.0) * u[j]); };
    acc += 0.5 * du * (term(i) + term(i + 1));
  }
  return std::pow(acc, 1.0 / sp.p());
}

std::vector<cplx> values_of(const std::vector<Estimate>& e) {
  std::vector<cplx> v(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) v[i] = e[i].value;
  return v;
}

}  // namespace

double inverse_composition_error(const KernelSpec& kernel, const SpaceParams& sp, const ResolventKernel& r,
                                 const KernelSpec& psi, const FunctionHandle& f, double x_lo, double x_hi,
                                 bool resolvent_last) {
  if (!(x_lo > 0.0 && x_hi > x_lo)) throw Error(ErrorCode::InvalidArgument, "need 0 < x_lo < x_hi");
  const cplx lam = r.lambda;
  const double below = 0.5 + std::min(10.0, std::max(0.0, -kernel.log_support().first));
  const double u0 = std::log(x_lo) - below, u1 = std::log(x_hi) + 3.0;
  const std::vector<double> us = linspace(u0, u1, 2049);
  const std::vector<double> ue = linspace(std::log(x_lo) - 0.5, u1, 257);
  std::vector<double> xs(us.size()), xe(ue.size());
  std::transform(us.begin(), us.end(), xs.begin(), [](double u) { return std::exp(u); });
  std::transform(ue.begin(), ue.end(), xe.begin(), [](double u) { return std::exp(u); });
  QuadOptions q{1e-11, 1e-15, 24};

  std::vector<cplx> fe(xe.size());
  for (std::size_t i = 0; i < xe.size(); ++i) fe[i] = f(cplx(xe[i]));
  std::vector<cplx> result(xe.size());
  if (resolvent_last) {
    // g = (lambda - H_phi) f, tabulated; then (g + H_psi g) / lambda
    const std::vector<cplx> hf = values_of(apply_real(kernel, f, xs, sp, q));
    std::vector<cplx> g(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) g[i] = lam * f(cplx(xs[i])) - hf[i];
    const FunctionHandle gh = FunctionHandle::sampled(xs, g);
    const std::vector<cplx> hfe = values_of(apply_real(kernel, f, xe, sp, q));
    const std::vector<cplx> hpg = values_of(apply_real(psi, gh, xe, sp, q));
    for (std::size_t i = 0; i < xe.size(); ++i) result[i] = (lam * fe[i] - hfe[i] + hpg[i]) / lam;
  } else {
    // v = (f + H_psi f) / lambda, tabulated; then lambda v - H_phi v
    const std::vector<cplx> hpf = values_of(apply_real(psi, f, xs, sp, q));
    std::vector<cplx> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = (f(cplx(xs[i])) + hpf[i]) / lam;
    const FunctionHandle vh = FunctionHandle::sampled(xs, v);
    const std::vector<cplx> hpfe = values_of(apply_real(psi, f, xe, sp, q));
    const std::vector<cplx> hv = values_of(apply_real(kernel, vh, xe, sp, q));
    for (std::size_t i = 0; i < xe.size(); ++i) result[i] = fe[i] + hpfe[i] - hv[i];
  }
  std::vector<cplx> diff(xe.size());
  for (std::size_t i = 0; i < xe.size(); ++i) diff[i] = result[i] - fe[i];
  return window_norm_p(ue, diff, sp) / window_norm_p(ue, fe, sp);
}

SymbolCurve adaptive_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, double xi_far, double chord_tol,
                                  std::size_t max_nodes) {
  std::vector<double> xi;
  if (kernel.is_atomic()) {
    double spread = 1e-3;
    for (const auto& a : std::get<AtomicKernel>(kernel.variant()).atoms)
      spread = std::max(spread, std::abs(std::log(a.position)));
    const std::size_t n = std::min(max_nodes / 2, std::size_t(2.0 * xi_far * spread / 0.05) + 2);
    xi = linspace(-xi_far, xi_far, std::max<std::size_t>(n, 3));
  } else {
    const double umax = std::asinh(xi_far);
    for (int i = -1024; i <= 1024; ++i) xi.push_back(std::sinh(umax * i / 1024.0));
    xi.front() = -xi_far;
    xi.back() = xi_far;
  }
  SymbolCurve c = symbol_curve(kernel, sp, xi);
  std::vector<char> active(xi.size() - 1, 1);
  while (c.xi.size() < max_nodes) {
    std::vector<double> mids;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i + 1 < c.xi.size(); ++i)
      if (active[i]) {
        mids.push_back(0.5 * (c.xi[i] + c.xi[i + 1]));
        where.push_back(i);
      }
    if (mids.empty()) break;
    const SymbolCurve m = symbol_curve(kernel, sp, mids);
    SymbolCurve next;
    next.method = c.method;
    std::vector<char> next_active;
    std::size_t w = 0;
    for (std::size_t i = 0; i < c.xi.size(); ++i) {
      next.xi.push_back(c.xi[i]);
      next.values.push_back(c.values[i]);
      next.err.push_back(c.err[i]);
      if (i + 1 == c.xi.size()) break;
      if (w < where.size() && where[w] == i) {
        const double dev = std::abs(m.values[w] - 0.5 * (c.values[i] + c.values[i + 1]));
        const bool again = dev > chord_tol;
        next.xi.push_back(m.xi[w]);
        next.values.push_back(m.values[w]);
        next.err.push_back(m.err[w]);
        next_active.push_back(again);
        next_active.push_back(again);
        ++w;
      } else {
        next_active.push_back(0);
      }
    }
    const bool any = std::any_of(next_active.begin(), next_active.end(), [](char x) { return x != 0; });
    c.xi = std::move(next.xi);
    c.values = std::move(next.values);
    c.err = std::move(next.err);
    active = std::move(next_active);
    if (!any) break;
  }
  // recompute summary fields
  c.sup_modulus = 0.0;
  for (const auto& v : c.values) c.sup_modulus = std::max(c.sup_modulus, std::abs(v));
  return c;
}

SpectralReport spectral_verify(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid,
                               const VerifyOptions& opt) {
  SpectralReport rep;
  rep.kernel_id = kernel.describe();
  rep.p = sp.p();
  rep.a = sp.a();
  rep.kind = sp.kind();
  rep.inclusion_only = kernel.is_atomic();

  const MomentResult ms = moment(kernel, sp, MomentMode::Signed);
  const MomentResult ma = moment(kernel, sp, MomentMode::Absolute);
  rep.moment_signed_abs = std::abs(ms.value);
  rep.upper_norm_bound = ma.value.real() + ma.abs_err;

  const double nyquist = M_PI / grid.h();
  const double chord_tol = opt.tol / 8.0;
  if (kernel.is_atomic()) {
    rep.xi_far = nyquist;
  } else {
    // extend until the symbol is negligible, then close the curve through 0
    rep.xi_far = std::max(8.0 * nyquist, 1e3);
    while (rep.xi_far < 1e8 && std::max(std::abs(symbol_at(kernel, sp, rep.xi_far).value),
                                        std::abs(symbol_at(kernel, sp, -rep.xi_far).value)) > chord_tol)
      rep.xi_far *= 2.0;
  }
  rep.curve = adaptive_symbol_curve(kernel, sp, rep.xi_far, chord_tol);
  rep.sup_modulus = rep.curve.sup_modulus;
  rep.lower_norm_bound = std::max(rep.moment_signed_abs, rep.sup_modulus);

  std::vector<cplx> curve_pts = rep.curve.values;
  if (!kernel.is_atomic()) {
    curve_pts.insert(curve_pts.begin(), cplx(0.0));
    curve_pts.push_back(cplx(0.0));
  }
  const Tree curve_tree = polyline_tree(curve_pts, false);

  LogGrid g = grid;
  for (;;) {
    const CirculantSpectrum cs = circulant_spectrum(kernel, sp, g);
    rep.grid = g;
    rep.eig_xi = cs.xi;
    rep.eigenvalues = cs.eigenvalues;
    rep.inclusion_distance = max_distance(cs.eigenvalues, curve_tree);
    if (rep.inclusion_only) {
      rep.coverage_distance = 0.0;
      rep.hausdorff_distance = rep.inclusion_distance;
    } else {
      const Tree eig_tree = polyline_tree(cs.eigenvalues, true);
      rep.coverage_distance = max_distance(curve_pts, eig_tree);
      rep.hausdorff_distance = std::max(rep.inclusion_distance, rep.coverage_distance);
    }
    rep.pass = rep.hausdorff_distance < opt.tol;
    if (rep.pass || !opt.refine || rep.inclusion_only || 2 * g.N() > opt.max_N) break;
    g = LogGrid(2.0 * g.S(), 2 * g.N());
    ++rep.levels;
  }
  return rep;
}

}  // namespace hsl
