#include "hsl/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hsl/errors.hpp"
#include "hsl/fft.hpp"
#include "hsl/parallel.hpp"

namespace hsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

FunctionHandle FunctionHandle::callable(Fn f, std::optional<Support> support) {
  if (!f) throw Error(ErrorCode::InvalidArgument, "empty callable");
  if (support && !(support->hi > support->lo))
    throw Error(ErrorCode::InvalidArgument, "support needs lo < hi");
  FunctionHandle h;
  h.fn_ = std::move(f);
  h.support_ = support;
  return h;
}

FunctionHandle FunctionHandle::sampled(std::vector<double> x, std::vector<cplx> values) {
  if (x.size() < 2 || x.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "sampled function needs >= 2 nodes and one value per node");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw Error(ErrorCode::InvalidArgument, "sample nodes must ascend strictly");
  FunctionHandle h;
  h.support_ = Support{x.front(), x.back()};
  h.x_ = std::move(x);
  h.v_ = std::move(values);
  return h;
}

cplx FunctionHandle::operator()(cplx z) const {
  cplx v;
  if (is_sampled()) {
    if (z.imag() != 0.0) throw Error(ErrorCode::EvaluationFailure, "sampled functions take real arguments only");
    const double t = z.real();
    if (t < x_.front() || t > x_.back()) return 0.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    if (it == x_.end()) return v_.back();
    const std::size_t i = std::size_t(it - x_.begin());
    const double w = (t - x_[i - 1]) / (x_[i] - x_[i - 1]);
    v = (1.0 - w) * v_[i - 1] + w * v_[i];
  } else {
    if (support_ && z.imag() == 0.0 && (z.real() < support_->lo || z.real() > support_->hi)) return 0.0;
    v = fn_(z);
  }
  if (!finite(v)) throw Error(ErrorCode::EvaluationFailure, "function value is not finite");
  return v;
}

namespace {

// Cut points in s = ln t for integrating against the kernel density.
std::vector<double> kernel_cuts(const KernelSpec& kernel, double beta) { return log_pieces(kernel, beta).cuts; }

// Restricts s so that x e^{-s} lies in the support of f.
bool s_range_for(const FunctionHandle& f, double x, double& slo, double& shi) {
  slo = -kInf;
  shi = kInf;
  const auto& sup = f.support();
  if (!sup) return true;
  const double lo = sup->lo, hi = sup->hi;
  if (x > 0.0) {
    if (hi <= 0.0) return false;
    if (std::isfinite(hi)) slo = std::log(x / hi);
    if (lo > 0.0) shi = std::log(x / lo);
  } else if (x < 0.0) {
    if (lo >= 0.0) return false;
    if (std::isfinite(lo)) slo = std::log(x / lo);
    if (hi < 0.0) shi = std::log(x / hi);
  } else {
    return lo <= 0.0 && hi >= 0.0;
  }
  return slo < shi;
}

void append_in(std::vector<double>& pts, const std::vector<double>& sorted, double a, double b) {
  for (auto it = std::upper_bound(sorted.begin(), sorted.end(), a); it != sorted.end() && *it < b; ++it)
    pts.push_back(*it);
}

// Pieces of [slo, shi] between kernel breakpoints and the kinks of a sampled
// f (at s = ln(x / node)). Many pieces means piecewise-smooth data on a fine
// grid, where one Gauss-Kronrod panel per piece is already exact to rounding.
Estimate integrate_against_kernel(const KernelSpec& kernel, const std::vector<double>& cuts, double slo,
                                  double shi, const FunctionHandle& f, double x,
                                  const std::function<cplx(double)>& fshift, const QuadOptions& opt) {
  if (cuts.size() < 2) return {};
  const double a = std::max(slo, cuts.front()), b = std::min(shi, cuts.back());
  if (!(b > a)) return {};
  std::vector<double> pts{a};
  append_in(pts, cuts, a, b);
  if (f.is_sampled() && x != 0.0) {
    std::vector<double> extra;
    for (double n : f.nodes())
      if (n * x > 0.0) extra.push_back(std::log(x / n));
    std::sort(extra.begin(), extra.end());
    append_in(pts, extra, a, b);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto g = [&](double s) { return fshift(s) * kernel.phi_log(s, Side::Average); };
  if (pts.size() > 65) return quad::gauss_panels(g, pts);
  return quad::integrate_pieces(g, pts, opt);
}

}  // namespace

std::vector<Estimate> apply_real(const KernelSpec& kernel, const FunctionHandle& f, const std::vector<double>& x,
                                 const SpaceParams& sp, const QuadOptions& opt) {
  (void)moment(kernel, sp, MomentMode::Absolute);
  std::vector<Estimate> out(x.size());
  if (auto* at = std::get_if<AtomicKernel>(&kernel.variant())) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (const auto& a : at->atoms) out[i].value += a.mass * f(cplx(x[i] / a.position)) / a.position;
    return out;
  }
  const std::vector<double> cuts = kernel_cuts(kernel, sp.beta());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 4)
  for (long il = 0; il < long(x.size()); ++il) {
    try {
      const std::size_t i = std::size_t(il);
      const double xi = x[i];
      double slo, shi;
      if (!s_range_for(f, xi, slo, shi)) continue;
      out[i] = integrate_against_kernel(
          kernel, cuts, slo, shi, f, xi, [&](double s) { return f(cplx(xi * std::exp(-s))); }, opt);
      if (!finite(out[i].value)) throw Error(ErrorCode::EvaluationFailure, "non-finite operator value");
    } catch (...) {
#pragma omp critical(hsl_apply_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

FunctionHandle applied(const KernelSpec& kernel, const FunctionHandle& f, const SpaceParams& sp,
                       const QuadOptions& opt) {
  (void)moment(kernel, sp, MomentMode::Absolute);
  if (auto* at = std::get_if<AtomicKernel>(&kernel.variant())) {
    const std::vector<Atom> atoms = at->atoms;
    return FunctionHandle::callable([atoms, f](cplx z) {
      cplx v = 0.0;
      for (const auto& a : atoms) v += a.mass * f(z / a.position) / a.position;
      return v;
    });
  }
  auto cuts = std::make_shared<const std::vector<double>>(kernel_cuts(kernel, sp.beta()));
  return FunctionHandle::callable([kernel, f, cuts, opt](cplx z) {
    if (z.imag() < 0.0) throw Error(ErrorCode::PointNotInUpperHalfPlane, "evaluation point has Im z < 0");
    if (z.imag() > 0.0)
      return integrate_against_kernel(kernel, *cuts, -kInf, kInf, f, 0.0,
                                      [&](double s) { return f(z * std::exp(-s)); }, opt)
          .value;
    const double x = z.real();
    double slo, shi;
    if (!s_range_for(f, x, slo, shi)) return cplx(0.0);
    return integrate_against_kernel(kernel, *cuts, slo, shi, f, x,
                                    [&](double s) { return f(cplx(x * std::exp(-s))); }, opt)
        .value;
  });
}

std::vector<cplx> apply_convolution(const LogKernel& k, const std::vector<cplx>& g) {
  const std::size_t N = k.grid.N();
  if (g.size() != N) throw Error(ErrorCode::GridMismatch, "convolution input does not match the kernel grid");
  std::vector<cplx> a(2 * N, 0.0), b(2 * N, 0.0);
  std::copy(g.begin(), g.end(), a.begin());
  // lag m h for m in [-N/2, N/2) lives at node N/2 + m
  for (long m = -long(N / 2); m < long(N / 2); ++m)
    b[std::size_t((m + long(2 * N)) % long(2 * N))] = k.samples[std::size_t(long(N / 2) + m)];
  fft::transform(a, false);
  fft::transform(b, false);
  for (std::size_t i = 0; i < 2 * N; ++i) a[i] *= b[i];
  fft::transform(a, true);
  std::vector<cplx> out(N);
  const double scale = k.grid.h() / double(2 * N);
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] * scale;
  return out;
}

std::vector<Estimate> apply_holomorphic(const KernelSpec& kernel, const FunctionHandle& f,
                                        const std::vector<cplx>& z, const SpaceParams& sp,
                                        const QuadOptions& opt) {
  for (const auto& p : z)
    if (!(p.imag() > 0.0))
      throw Error(ErrorCode::PointNotInUpperHalfPlane, "evaluation points need Im z > 0");
  (void)moment(kernel, sp, MomentMode::Absolute);
  std::vector<Estimate> out(z.size());
  if (auto* at = std::get_if<AtomicKernel>(&kernel.variant())) {
    for (std::size_t i = 0; i < z.size(); ++i)
      for (const auto& a : at->atoms) out[i].value += a.mass * f(z[i] / a.position) / a.position;
    return out;
  }
  const std::vector<double> cuts = kernel_cuts(kernel, sp.beta());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 4)
  for (long il = 0; il < long(z.size()); ++il) {
    try {
      const std::size_t i = std::size_t(il);
      const cplx zi = z[i];
      out[i] = integrate_against_kernel(kernel, cuts, -kInf, kInf, f, 0.0,
                                        [&](double s) { return f(zi * std::exp(-s)); }, opt);
      if (!finite(out[i].value)) throw Error(ErrorCode::EvaluationFailure, "non-finite operator value");
    } catch (...) {
#pragma omp critical(hsl_apply_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Estimate cesaro_direct(cplx nu, const FunctionHandle& f, cplx z, const QuadOptions& opt) {
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::PointNotInUpperHalfPlane, "evaluation point needs Im z > 0");
  if (!(nu.real() > 0.0)) throw Error(ErrorCode::InvalidArgument, "Cesaro operator needs Re nu > 0");
  const double r = nu.real();
  const double w = nu.imag() / r;
  // u^{nu-1} du = (1/Re nu) v^{i Im nu / Re nu} dv
  auto g = [&](double v) -> cplx {
    const cplx osc = v > 0.0 ? std::exp(cplx(0.0, w * std::log(v))) : cplx(0.0);
    return osc * f(z * std::pow(v, 1.0 / r)) / r;
  };
  Estimate e = quad::integrate(g, 0.0, 1.0, opt);
  if (!finite(e.value)) throw Error(ErrorCode::EvaluationFailure, "non-finite Cesaro value");
  return e;
}

namespace {

struct PowerIntegral {
  double value = 0.0;
  double tail = 0.0;
  double err = 0.0;
};

// Tail of int G beyond `edge` for G ~ C e^{-gamma |u - edge|}, with gamma
// estimated from octave pairs; the bound is the spread of two estimates.
void fit_tail(const std::function<double(double)>& G, double edge, double dir, PowerIntegral& acc) {
  const double l2 = std::log(2.0);
  const double g0 = G(edge), g1 = G(edge - dir * l2), g2 = G(edge - 2.0 * dir * l2);
  if (g0 == 0.0) return;
  const double gam1 = std::log(g1 / g0) / l2, gam2 = std::log(g2 / g1) / l2;
  if (!(gam1 > 0.0) || !(gam2 > 0.0))
    throw Error(ErrorCode::TruncationTooSmall, "integrand does not decay at the truncation point");
  const double t1 = g0 / gam1, t2 = g0 / gam2;
  acc.value += t1;
  acc.tail += std::abs(t1 - t2);
}

// int_{-inf}^{inf} G(u) du over a finite window with fitted tails; the window
// is split into unit-scale pieces so adaptive refinement stays local.
PowerIntegral log_line_integral(const std::function<double(double)>& G, double ulo, double uhi, bool tail_lo,
                                bool tail_hi, const QuadOptions& q) {
  PowerIntegral r;
  if (!(uhi > ulo)) return r;
  const int pieces = std::max(1, int(std::ceil((uhi - ulo) / 4.0)));
  std::vector<double> cuts(std::size_t(pieces) + 1);
  for (int i = 0; i <= pieces; ++i) cuts[std::size_t(i)] = ulo + (uhi - ulo) * i / pieces;
  const Estimate e = quad::integrate_pieces(G, cuts, q);
  r.value = e.value.real();
  r.err = e.err;
  if (tail_hi) fit_tail(G, uhi, 1.0, r);
  if (tail_lo) fit_tail(G, ulo, -1.0, r);
  return r;
}

// int_0^inf |f(r w)|^p r^a dr in u = ln r, optionally limited to r in [rlo, rhi].
PowerIntegral ray_integral(const FunctionHandle& f, cplx w, double p, double a, double rlo, double rhi,
                           const NormOptions& opt) {
  const double big = std::log(opt.X);
  const double lo_default = -std::max(big, 40.0 / (a + 1.0));
  const bool open_lo = rlo <= 0.0, open_hi = !std::isfinite(rhi);
  const double ulo = open_lo ? lo_default : std::log(rlo);
  const double uhi = open_hi ? big : std::log(rhi);
  auto G = [&](double u) {
    const double r = std::exp(u);
    return std::pow(std::abs(f(w * r)), p) * std::exp((a + 1.0) * u);
  };
  if (f.is_sampled() && f.nodes().size() <= (1u << 18)) {
    // piecewise at the sample nodes lying on this ray
    std::vector<double> cuts{ulo, uhi};
    for (double n : f.nodes()) {
      const double rr = n * w.real();
      if (rr > 0.0 && std::log(rr) > ulo && std::log(rr) < uhi) cuts.push_back(std::log(rr));
    }
    std::sort(cuts.begin(), cuts.end());
    PowerIntegral r;
    QuadOptions q = opt.quad;
    const Estimate e = quad::integrate_pieces(G, cuts, q);
    r.value = e.value.real();
    r.err = e.err;
    if (open_hi) fit_tail(G, uhi, 1.0, r);
    if (open_lo) fit_tail(G, ulo, -1.0, r);
    return r;
  }
  return log_line_integral(G, ulo, uhi, open_lo, open_hi, opt.quad);
}

NormReport finish(double integral, double tail, double err, double p, const NormOptions& opt) {
  if (tail > opt.tail_tol * integral)
    throw Error(ErrorCode::TruncationTooSmall,
                "tail uncertainty " + std::to_string(tail) + " exceeds tolerance; increase the truncation X");
  NormReport r;
  r.value = std::pow(integral, 1.0 / p);
  const double d = integral > 0.0 ? r.value / (p * integral) : 0.0;
  r.tail_bound = d * tail;
  r.quadrature_err = d * err;
  return r;
}

}  // namespace

NormReport norm(const FunctionHandle& f, const SpaceParams& sp, const NormOptions& opt) {
  const double p = sp.p(), a = sp.a();
  if (sp.infinite_p()) {
    NormReport r;
    if (f.is_sampled()) {
      for (const auto& v : f.samples()) r.value = std::max(r.value, std::abs(v));
      return r;
    }
    const double big = std::log(opt.X);
    for (int sgn : {-1, 1})
      for (int i = 0; i <= 20000; ++i) {
        const double u = -big + 2.0 * big * i / 20000.0;
        r.value = std::max(r.value, std::abs(f(cplx(sgn * std::exp(u)))));
      }
    return r;
  }
  if (sp.kind() != SpaceKind::BergmanPlane) {
    double lo = -kInf, hi = kInf;
    if (f.support()) {
      lo = f.support()->lo;
      hi = f.support()->hi;
    }
    PowerIntegral tot;
    if (hi > 0.0) {
      const PowerIntegral r = ray_integral(f, 1.0, p, a, std::max(lo, 0.0), hi, opt);
      tot.value += r.value;
      tot.tail += r.tail;
      tot.err += r.err;
    }
    if (lo < 0.0) {
      const PowerIntegral r = ray_integral(f, -1.0, p, a, std::max(-hi, 0.0), -lo, opt);
      tot.value += r.value;
      tot.tail += r.tail;
      tot.err += r.err;
    }
    return finish(tot.value, tot.tail, tot.err, p, opt);
  }
  // Bergman: int_0^pi sin^{a-1}(theta) int_0^inf |f(r e^{i theta})|^p r^a dr d theta
  std::vector<double> xs, ws;
  quad::gauss_jacobi(opt.theta_nodes, a - 1.0, a - 1.0, xs, ws);
  std::vector<PowerIntegral> parts(xs.size());
  std::exception_ptr failure;
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 1)
  for (long il = 0; il < long(xs.size()); ++il) {
    try {
      const std::size_t i = std::size_t(il);
      const double th = 0.5 * M_PI * (1.0 + xs[i]);
      parts[i] = ray_integral(f, std::polar(1.0, th), p, a, 0.0, kInf, opt);
    } catch (...) {
#pragma omp critical(hsl_norm_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  PowerIntegral tot;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // sin(theta) = cos(pi x / 2) = (1 - x^2) * smooth factor
    const double smooth = std::cos(0.5 * M_PI * xs[i]) / (1.0 - xs[i] * xs[i]);
    const double w = ws[i] * 0.5 * M_PI * std::pow(smooth, a - 1.0);
    tot.value += w * parts[i].value;
    tot.tail += w * parts[i].tail;
    tot.err += w * parts[i].err;
  }
  return finish(tot.value, tot.tail, tot.err, p, opt);
}

double weighted_ball_measure(double x, double y, double a) {
  auto F = [a](double u) { return std::copysign(std::pow(std::abs(u), a + 1.0) / (a + 1.0), u); };
  return F(x + y) - F(x - y);
}

double growth_bound(double x, double y, const SpaceParams& sp, double f_norm) {
  return std::pow(weighted_ball_measure(x, y, sp.a()), -1.0 / sp.p()) * f_norm;
}

void write_function_csv(std::ostream& os, const std::vector<double>& x, const std::vector<cplx>& values) {
  os << "x,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x[i], values[i].real(), values[i].imag());
    os << buf;
  }
}

}  // namespace hsl
