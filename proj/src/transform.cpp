#include "hsl/transform.hpp"

#include <algorithm>
#include <cmath>

#include "hsl/errors.hpp"
#include "hsl/parallel.hpp"
#include "hsl/quadrature.hpp"

namespace hsl {

LogGrid::LogGrid(double S, std::size_t N) : S_(S), N_(N), h_(0.0) {
  if (!(S > 0.0) || !std::isfinite(S)) throw Error(ErrorCode::InvalidArgument, "grid half-width S must be > 0");
  if (N < 8 || (N & (N - 1)) != 0) throw Error(ErrorCode::InvalidArgument, "grid size N must be a power of two >= 8");
  h_ = 2.0 * S / double(N);
}

std::vector<double> LogGrid::nodes() const {
  std::vector<double> s(N_);
  for (std::size_t j = 0; j < N_; ++j) s[j] = node(j);
  return s;
}

double LogGrid::frequency(long m) const noexcept { return M_PI * double(m) / S_; }

namespace {

// Evaluates k at s, moving s onto a breakpoint when it is within rounding of
// one so that jump handling does not depend on the last bit of s_j.
struct SnappedEvaluator {
  const KernelSpec& kernel;
  double beta;
  std::vector<double> breaks;
  double snap;

  cplx operator()(double s, Side side) const {
    auto it = std::lower_bound(breaks.begin(), breaks.end(), s - snap);
    if (it != breaks.end() && std::abs(*it - s) <= snap) return log_kernel_value(kernel, beta, *it, side);
    return log_kernel_value(kernel, beta, s, Side::Right);
  }
};

}  // namespace

LogKernel log_kernel(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid) {
  if (kernel.is_atomic())
    throw Error(ErrorCode::AtomicKernelUnsupported, "atomic kernels have no log-kernel samples");
  const double beta = sp.beta();
  const MomentResult mabs = moment(kernel, sp, MomentMode::Absolute);  // throws when divergent
  const LogPieces lp = log_pieces(kernel, beta);

  const std::size_t N = grid.N();
  const double h = grid.h(), period = 2.0 * grid.S();
  LogKernel out{grid, std::vector<cplx>(N), std::vector<cplx>(N), std::vector<cplx>(N, 0.0), 0.0, 0.0, beta};

  SnappedEvaluator eval{kernel, beta, kernel.log_breakpoints(), 1e-10 * h};
  double lo = 0.0, hi = 0.0;
  if (!lp.cuts.empty()) {
    lo = lp.cuts.front();
    hi = lp.cuts.back();
  }

#pragma omp parallel for num_threads(thread_count()) schedule(static)
  for (long jl = 0; jl < long(N); ++jl) {
    const std::size_t j = std::size_t(jl);
    const double s = grid.node(j);
    out.values[j] = eval(s, Side::Right);
    out.samples[j] = eval(s, Side::Average);
    if (lp.cuts.empty()) continue;
    const long n0 = long(std::ceil((lo - s) / period - 1e-12));
    const long n1 = long(std::floor((hi - s) / period + 1e-12));
    cplx acc = 0.0;
    for (long n = n0; n <= n1; ++n) acc += eval(s + double(n) * period, Side::Average);
    out.periodic[j] = acc;
  }

  double l1 = 0.0;
  for (const auto& v : out.samples) l1 += std::abs(v);
  out.l1_estimate = h * l1;

  if (!lp.cuts.empty()) {
    std::vector<double> inner{-grid.S()};
    for (double c : lp.cuts)
      if (c > -grid.S() && c < grid.S()) inner.push_back(c);
    inner.push_back(grid.S());
    const Estimate in = quad::integrate_pieces(
        [&](double s) { return std::abs(log_kernel_value(kernel, beta, s, Side::Average)); }, inner);
    out.tail_bound = std::max(0.0, mabs.value.real() - in.value.real()) + lp.tail_bound;
  }
  return out;
}

std::vector<cplx> unitary(Direction dir, const std::vector<cplx>& f, const SpaceParams& sp, const LogGrid& grid) {
  if (f.size() != grid.N())
    throw Error(ErrorCode::GridMismatch, "sample vector length " + std::to_string(f.size()) +
                                             " does not match grid size " + std::to_string(grid.N()));
  const double beta = sp.beta();
  std::vector<cplx> g(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double w = std::exp(beta * grid.node(j));
    g[j] = dir == Direction::Forward ? f[j] * w : f[j] / w;
  }
  return g;
}

double discrete_norm_log(const std::vector<cplx>& g, double p, const LogGrid& grid) {
  if (g.size() != grid.N()) throw Error(ErrorCode::GridMismatch, "sample vector does not match grid");
  double acc = 0.0;
  for (const auto& v : g) acc += std::pow(std::abs(v), p) * grid.h();
  return std::pow(acc, 1.0 / p);
}

double discrete_norm_geometric(const std::vector<cplx>& f, const SpaceParams& sp, const LogGrid& grid) {
  if (f.size() != grid.N()) throw Error(ErrorCode::GridMismatch, "sample vector does not match grid");
  const double p = sp.p(), a = sp.a();
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double t = std::exp(grid.node(j));
    acc += std::pow(std::abs(f[j]), p) * std::pow(t, a) * (t * grid.h());
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace hsl
