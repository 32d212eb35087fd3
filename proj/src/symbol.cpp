#include "hsl/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <boost/math/tools/minima.hpp>

#include "hsl/errors.hpp"
#include "hsl/fft.hpp"
#include "hsl/parallel.hpp"

namespace hsl {

std::string_view to_string(SymbolMethod m) {
  switch (m) {
    case SymbolMethod::Auto: return "auto";
    case SymbolMethod::ClosedForm: return "closed_form";
    case SymbolMethod::Quadrature: return "quadrature";
    case SymbolMethod::FFT: return "fft";
  }
  return "unknown";
}

namespace {

bool has_closed_form(const KernelSpec& k) {
  return std::holds_alternative<CesaroKernel>(k.variant()) || k.is_atomic();
}

cplx closed_form(const KernelSpec& kernel, double beta, double xi) {
  if (auto* c = std::get_if<CesaroKernel>(&kernel.variant())) {
    if (!(c->nu.real() > beta))
      throw Error(ErrorCode::DivergentMoment, "Cesaro symbol needs p*Re(nu) > a+1");
    return 1.0 / (cplx(0.0, xi) - beta + c->nu);
  }
  const auto& atoms = std::get<AtomicKernel>(kernel.variant()).atoms;
  cplx acc = 0.0;
  for (const auto& a : atoms) {
    const double ls = std::log(a.position);
    acc += a.mass * std::exp((beta - 1.0) * ls) * std::exp(cplx(0.0, -xi * ls));
  }
  return acc;
}

// Phase (radians) across a piece above which Filon replaces adaptive
// Gauss-Kronrod; a few oscillations already make bisection wasteful.
constexpr double kFilonPhase = 8.0;

Estimate quadrature_symbol(const KernelSpec& kernel, double beta, double xi, const QuadOptions& opt) {
  const LogPieces lp = log_pieces(kernel, beta);
  Estimate total;
  total.err = lp.tail_bound;
  for (std::size_t i = 0; i + 1 < lp.cuts.size(); ++i) {
    const double u = lp.cuts[i], v = lp.cuts[i + 1];
    // One-sided limits at the piece ends keep the integrand smooth on [u, v].
    auto g = [&](double s) -> cplx {
      const Side side = s <= u ? Side::Right : (s >= v ? Side::Left : Side::Average);
      return log_kernel_value(kernel, beta, std::clamp(s, u, v), side);
    };
    if (std::abs(xi) * (v - u) > kFilonPhase) {
      QuadOptions coarse = opt;
      coarse.max_depth = 0;
      const Estimate l1 = quad::integrate([&](double s) { return std::abs(g(s)); }, u, v, coarse);
      const double tol = std::max(opt.abs_tol, opt.rel_tol * l1.value.real());
      total += quad::filon(g, u, v, xi, tol);
    } else {
      total += quad::integrate([&](double s) { return g(s) * std::exp(cplx(0.0, -xi * s)); }, u, v, opt);
    }
  }
  return total;
}

void finish_curve(SymbolCurve& c, bool atomic) {
  c.sup_modulus = 0.0;
  double min_mod = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    c.sup_modulus = std::max(c.sup_modulus, std::abs(c.values[i]));
    min_mod = std::min(min_mod, std::abs(c.values[i]));
  }
  if (!atomic) {
    c.closure_includes_zero = true;
  } else {
    double tol = 1e-12;
    for (double e : c.err) tol = std::max(tol, e);
    c.closure_includes_zero = min_mod <= tol;
  }
}

}  // namespace

Estimate symbol_at(const KernelSpec& kernel, const SpaceParams& sp, double xi, SymbolMethod method,
                   const QuadOptions& opt) {
  const double beta = sp.beta();
  if (method == SymbolMethod::FFT)
    throw Error(ErrorCode::InvalidArgument, "FFT symbols are only available on grid frequencies");
  if (method == SymbolMethod::Auto) method = has_closed_form(kernel) ? SymbolMethod::ClosedForm : SymbolMethod::Quadrature;
  if (method == SymbolMethod::ClosedForm) {
    if (!has_closed_form(kernel))
      throw Error(ErrorCode::InvalidArgument, "no closed-form symbol for " + kernel.describe());
    return {closed_form(kernel, beta, xi), 0.0};
  }
  if (kernel.is_atomic()) return {closed_form(kernel, beta, xi), 0.0};
  // Guarantees the divergence check even where log_pieces would not reach it.
  (void)moment(kernel, sp, MomentMode::Absolute);
  return quadrature_symbol(kernel, beta, xi, opt);
}

SymbolCurve symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const std::vector<double>& xi_nodes,
                         SymbolMethod method, const QuadOptions& opt) {
  if (method == SymbolMethod::FFT)
    throw Error(ErrorCode::InvalidArgument, "use fft_symbol_curve for the FFT method");
  if (method == SymbolMethod::Auto) method = has_closed_form(kernel) ? SymbolMethod::ClosedForm : SymbolMethod::Quadrature;
  if (!kernel.is_atomic()) (void)moment(kernel, sp, MomentMode::Absolute);
  SymbolCurve c;
  c.method = method;
  c.xi = xi_nodes;
  c.values.resize(xi_nodes.size());
  c.err.resize(xi_nodes.size());
#pragma omp parallel for num_threads(thread_count()) schedule(dynamic, 8)
  for (long i = 0; i < long(xi_nodes.size()); ++i) {
    const Estimate e = symbol_at(kernel, sp, xi_nodes[std::size_t(i)], method, opt);
    c.values[std::size_t(i)] = e.value;
    c.err[std::size_t(i)] = e.err;
  }
  finish_curve(c, kernel.is_atomic());
  return c;
}

namespace {

std::vector<cplx> dft_of_periodic(const std::vector<cplx>& periodic, double h) {
  const std::size_t N = periodic.size();
  std::vector<cplx> col(N);
  for (std::size_t j = 0; j < N; ++j) col[j] = h * periodic[(j + N / 2) % N];
  fft::transform(col, false);
  // reorder to m = -N/2 .. N/2-1
  std::vector<cplx> out(N);
  for (std::size_t i = 0; i < N; ++i) out[i] = col[(i + N / 2) % N];
  return out;
}

}  // namespace

SymbolCurve fft_symbol_curve(const LogKernel& k) {
  const std::size_t N = k.grid.N();
  SymbolCurve c;
  c.method = SymbolMethod::FFT;
  c.xi.resize(N);
  for (std::size_t i = 0; i < N; ++i) c.xi[i] = k.grid.frequency(long(i) - long(N / 2));
  c.values = dft_of_periodic(k.periodic, k.grid.h());

  // Error estimate: compare with every other sample (step 2h, same period),
  // which shares the frequencies |m| < N/4; outside that band the value is
  // an aliased estimate whose size bounds its own error. No Richardson
  // factor: a jump between nodes makes the error first order in h.
  std::vector<cplx> half(N / 2);
  for (std::size_t j = 0; j < N / 2; ++j) half[j] = k.periodic[2 * j];
  const std::vector<cplx> coarse = dft_of_periodic(half, 2.0 * k.grid.h());
  c.err.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const long m = long(i) - long(N / 2);
    if (m >= -long(N / 4) && m < long(N / 4)) {
      c.err[i] = std::abs(c.values[i] - coarse[std::size_t(m + long(N / 4))]) + k.tail_bound;
    } else {
      c.err[i] = std::abs(c.values[i]) + k.tail_bound;
    }
  }
  finish_curve(c, false);
  return c;
}

SymbolCurve fft_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid) {
  if (!kernel.is_atomic()) return fft_symbol_curve(log_kernel(kernel, sp, grid));
  const std::size_t N = grid.N();
  const double beta = sp.beta();
  SymbolCurve c;
  c.method = SymbolMethod::FFT;
  c.xi.resize(N);
  c.values.assign(N, 0.0);
  c.err.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) c.xi[i] = grid.frequency(long(i) - long(N / 2));
  for (const auto& a : std::get<AtomicKernel>(kernel.variant()).atoms) {
    const double s = std::log(a.position);
    // nearest node, taken modulo the period
    const double jr = std::round((s + grid.S()) / grid.h());
    const double snapped = -grid.S() + jr * grid.h();
    const cplx w = a.mass * std::exp((beta - 1.0) * s);
    for (std::size_t i = 0; i < N; ++i) {
      c.values[i] += w * std::exp(cplx(0.0, -c.xi[i] * snapped));
      c.err[i] += std::abs(w) * std::min(2.0, std::abs(c.xi[i] * (snapped - s)));
    }
  }
  finish_curve(c, true);
  return c;
}

SymbolCurve fft_symbol_curve(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid,
                             const std::vector<double>& xi_nodes) {
  const SymbolCurve full = fft_symbol_curve(kernel, sp, grid);
  SymbolCurve c;
  c.method = SymbolMethod::FFT;
  const long N = long(grid.N());
  for (double x : xi_nodes) {
    const double mr = x * grid.S() / M_PI;
    const long m = std::lround(mr);
    if (std::abs(mr - double(m)) > 1e-9 * std::max(1.0, std::abs(mr)) || m < -N / 2 || m >= N / 2)
      throw Error(ErrorCode::GridMismatch, "xi = " + std::to_string(x) + " is not a DFT frequency of the grid");
    const std::size_t i = std::size_t(m + N / 2);
    c.xi.push_back(full.xi[i]);
    c.values.push_back(full.values[i]);
    c.err.push_back(full.err[i]);
  }
  finish_curve(c, kernel.is_atomic());
  return c;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

std::vector<double> default_xi_nodes(double xi_max, std::size_t count) { return linspace(-xi_max, xi_max, count); }

CurveDistance curve_distance(const SymbolCurve& curve, cplx lambda) {
  CurveDistance best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
  const std::size_t n = curve.values.size();
  std::size_t ib = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(lambda - curve.values[i]);
    if (d < best.distance) {
      best = {d, curve.xi[i]};
      ib = i;
    }
  }
  if (n >= 3) {
    // quadratic through three consecutive nodes around the best one
    const std::size_t i0 = std::clamp<std::size_t>(ib, 1, n - 2) - 1;
    const double x0 = curve.xi[i0], x1 = curve.xi[i0 + 1], x2 = curve.xi[i0 + 2];
    const cplx y0 = curve.values[i0], y1 = curve.values[i0 + 1], y2 = curve.values[i0 + 2];
    auto q = [&](double x) {
      return y0 * ((x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2))) +
             y1 * ((x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2))) +
             y2 * ((x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1)));
    };
    auto r = boost::math::tools::brent_find_minima([&](double x) { return std::abs(lambda - q(x)); }, x0, x2, 50);
    if (r.second < best.distance) best = {r.second, r.first};
  }
  if (curve.closure_includes_zero && std::abs(lambda) < best.distance)
    best = {std::abs(lambda), std::numeric_limits<double>::infinity()};
  return best;
}

void write_curve_csv(std::ostream& os, const SymbolCurve& curve) {
  os << "xi,re,im,err\n";
  char buf[128];
  for (std::size_t i = 0; i < curve.xi.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", curve.xi[i], curve.values[i].real(),
                  curve.values[i].imag(), curve.err[i]);
    os << buf;
  }
}

}  // namespace hsl
