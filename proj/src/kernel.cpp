#include "hsl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsl/errors.hpp"
#include "hsl/quadrature.hpp"

namespace hsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Value of an indicator-type factor at a jump located at s == edge.
cplx at_edge(cplx inside, bool inside_is_right, Side side) {
  switch (side) {
    case Side::Average: return 0.5 * inside;
    case Side::Right: return inside_is_right ? inside : cplx(0.0);
    case Side::Left: return inside_is_right ? cplx(0.0) : inside;
  }
  return inside;
}

cplx sampled_at(const SampledKernel& k, double t) {
  const auto& ts = k.t;
  if (t < ts.front() || t > ts.back()) return 0.0;
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.end()) return k.values.back();
  std::size_t i = std::size_t(it - ts.begin());
  if (i == 0) return k.values.front();
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return (1.0 - w) * k.values[i - 1] + w * k.values[i];
}

std::string fmt_c(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

KernelSpec::KernelSpec(Variant v) : v_(std::move(v)) {}

KernelSpec KernelSpec::cesaro(cplx nu) {
  if (!(nu.real() > 0.0) || !std::isfinite(nu.imag()))
    throw Error(ErrorCode::InvalidArgument, "Cesaro kernel needs Re nu > 0");
  return KernelSpec(CesaroKernel{nu});
}

KernelSpec KernelSpec::power_cut(cplx exponent, double lo, double hi) {
  if (!(lo > 0.0) || !std::isfinite(lo)) throw Error(ErrorCode::NonPositiveSupport, "lo must be > 0");
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "need hi > lo");
  if (!std::isfinite(exponent.real()) || !std::isfinite(exponent.imag()))
    throw Error(ErrorCode::InvalidArgument, "exponent must be finite");
  return KernelSpec(PowerCutKernel{exponent, lo, hi});
}

KernelSpec KernelSpec::sampled(std::vector<double> t, std::vector<cplx> values) {
  if (t.size() < 2 || t.size() != values.size())
    throw Error(ErrorCode::InvalidArgument, "sampled kernel needs >= 2 nodes and one value per node");
  if (!(t.front() > 0.0)) throw Error(ErrorCode::NonPositiveSupport, "sampled nodes must be > 0");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw Error(ErrorCode::InvalidArgument, "sampled nodes must ascend strictly");
  if (!std::isfinite(t.back())) throw Error(ErrorCode::InvalidArgument, "sampled nodes must be finite");
  return KernelSpec(SampledKernel{std::move(t), std::move(values)});
}

KernelSpec KernelSpec::atomic(std::vector<Atom> atoms) {
  for (const auto& a : atoms)
    if (!(a.position > 0.0) || !std::isfinite(a.position))
      throw Error(ErrorCode::NonPositiveSupport, "atom positions must be finite and > 0");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.position < y.position; });
  for (std::size_t i = 1; i < atoms.size(); ++i)
    if (atoms[i].position == atoms[i - 1].position)
      throw Error(ErrorCode::InvalidArgument, "atom positions must be distinct");
  return KernelSpec(AtomicKernel{std::move(atoms)});
}

KernelSpec KernelSpec::truncated(const KernelSpec& inner, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidDelta, "delta must lie in (0,1)");
  if (inner.is_atomic())
    throw Error(ErrorCode::AtomicKernelUnsupported, "truncate atomic kernels by filtering atoms");
  return KernelSpec(TruncatedKernel{std::make_shared<const KernelSpec>(inner), delta});
}

KernelSpec KernelSpec::zero() { return sampled({1.0, 2.0}, {0.0, 0.0}); }

bool KernelSpec::nonnegative_masses() const {
  if (auto* a = std::get_if<AtomicKernel>(&v_)) {
    return std::all_of(a->atoms.begin(), a->atoms.end(),
                       [](const Atom& x) { return x.mass.imag() == 0.0 && x.mass.real() >= 0.0; });
  }
  return true;
}

std::string KernelSpec::describe() const {
  return std::visit(
      overloaded{
          [](const CesaroKernel& k) { return "cesaro(nu=" + fmt_c(k.nu) + ")"; },
          [](const PowerCutKernel& k) {
            std::ostringstream os;
            os << "powercut(exponent=" << fmt_c(k.exponent) << ",lo=" << k.lo << ",hi=" << k.hi << ")";
            return os.str();
          },
          [](const SampledKernel& k) {
            std::ostringstream os;
            os << "sampled(" << k.t.size() << " nodes on [" << k.t.front() << "," << k.t.back() << "])";
            return os.str();
          },
          [](const AtomicKernel& k) {
            std::ostringstream os;
            os << "atomic(";
            for (std::size_t i = 0; i < k.atoms.size(); ++i)
              os << (i ? "," : "") << fmt_c(k.atoms[i].mass) << "@" << k.atoms[i].position;
            os << ")";
            return os.str();
          },
          [](const TruncatedKernel& k) {
            std::ostringstream os;
            os << "truncated(" << k.inner->describe() << ",delta=" << k.delta << ")";
            return os.str();
          },
      },
      v_);
}

cplx KernelSpec::phi_log(double s, Side side) const {
  return std::visit(
      overloaded{
          [&](const CesaroKernel& k) -> cplx {
            if (s < 0.0) return 0.0;
            if (s == 0.0) return at_edge(1.0, true, side);
            return std::exp(-k.nu * s);
          },
          [&](const PowerCutKernel& k) -> cplx {
            const double a = std::log(k.lo), b = std::log(k.hi);
            if (s < a || s > b) return 0.0;
            const cplx v = std::exp(k.exponent * s);
            if (s == a) return at_edge(v, true, side);
            if (s == b) return at_edge(v, false, side);
            return v;
          },
          [&](const SampledKernel& k) -> cplx {
            const double a = std::log(k.t.front()), b = std::log(k.t.back());
            if (s < a || s > b) return 0.0;
            if (s == a) return at_edge(k.values.front(), true, side);
            if (s == b) return at_edge(k.values.back(), false, side);
            return sampled_at(k, std::exp(s));
          },
          [&](const AtomicKernel&) -> cplx {
            throw Error(ErrorCode::AtomicKernelUnsupported, "atomic kernels have no pointwise density");
          },
          [&](const TruncatedKernel& k) -> cplx {
            const double a = std::log(k.delta), b = -a;
            if (s < a || s > b) return 0.0;
            if (s == a) return at_edge(k.inner->phi_log(s, Side::Right), true, side);
            if (s == b) return at_edge(k.inner->phi_log(s, Side::Left), false, side);
            return k.inner->phi_log(s, side);
          },
      },
      v_);
}

std::pair<double, double> KernelSpec::log_support() const {
  return std::visit(
      overloaded{
          [](const CesaroKernel&) { return std::pair{0.0, kInf}; },
          [](const PowerCutKernel& k) { return std::pair{std::log(k.lo), std::log(k.hi)}; },
          [](const SampledKernel& k) { return std::pair{std::log(k.t.front()), std::log(k.t.back())}; },
          [](const AtomicKernel& k) {
            if (k.atoms.empty()) return std::pair{0.0, 0.0};
            return std::pair{std::log(k.atoms.front().position), std::log(k.atoms.back().position)};
          },
          [](const TruncatedKernel& k) {
            auto [lo, hi] = k.inner->log_support();
            const double a = std::log(k.delta);
            return std::pair{std::max(lo, a), std::min(hi, -a)};
          },
      },
      v_);
}

std::vector<double> KernelSpec::log_breakpoints() const {
  std::vector<double> out = std::visit(
      overloaded{
          [](const CesaroKernel&) { return std::vector<double>{0.0}; },
          [](const PowerCutKernel& k) {
            std::vector<double> v{std::log(k.lo)};
            if (std::isfinite(k.hi)) v.push_back(std::log(k.hi));
            return v;
          },
          [](const SampledKernel& k) {
            std::vector<double> v(k.t.size());
            std::transform(k.t.begin(), k.t.end(), v.begin(), [](double t) { return std::log(t); });
            return v;
          },
          [](const AtomicKernel& k) {
            std::vector<double> v;
            for (const auto& a : k.atoms) v.push_back(std::log(a.position));
            return v;
          },
          [](const TruncatedKernel& k) {
            const double a = std::log(k.delta);
            std::vector<double> v{a, -a};
            for (double b : k.inner->log_breakpoints())
              if (b > a && b < -a) v.push_back(b);
            return v;
          },
      },
      v_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // Truncation can push the whole inner support outside [delta, 1/delta).
  auto [lo, hi] = log_support();
  if (lo >= hi && !is_atomic()) return {};
  return out;
}

std::optional<double> KernelSpec::log_decay_rate(double beta) const {
  if (auto* c = std::get_if<CesaroKernel>(&v_)) return c->nu.real() - beta;
  if (auto* p = std::get_if<PowerCutKernel>(&v_))
    if (!std::isfinite(p->hi)) return -(p->exponent.real() + beta);
  return std::nullopt;
}

cplx log_kernel_value(const KernelSpec& kernel, double beta, double s, Side side) {
  const cplx v = kernel.phi_log(s, side);
  if (v == cplx(0.0)) return 0.0;
  return std::exp(beta * s) * v;
}

LogPieces log_pieces(const KernelSpec& kernel, double beta, double rel_tail) {
  if (kernel.is_atomic()) throw Error(ErrorCode::AtomicKernelUnsupported, "no density to integrate");
  LogPieces out;
  out.cuts = kernel.log_breakpoints();
  auto [lo, hi] = kernel.log_support();
  if (out.cuts.empty() || !(hi > lo)) {
    out.cuts.clear();
    return out;
  }
  if (std::isfinite(hi)) return out;
  const auto rho = kernel.log_decay_rate(beta);
  if (!rho || !(*rho > 0.0))
    throw Error(ErrorCode::DivergentMoment,
                kernel.describe() + " is not integrable against t^(beta-1) at infinity");
  // |k| is exactly exponential beyond the last breakpoint for the closed-form
  // families with unbounded support.
  const double s0 = out.cuts.back();
  const double m0 = std::abs(log_kernel_value(kernel, beta, s0, Side::Right));
  double cut = s0 + 1.0;
  if (m0 > 0.0) cut = std::max(cut, s0 + std::log(1.0 / (*rho * rel_tail)) / *rho);
  out.cuts.push_back(cut);
  out.tail_bound = std::abs(log_kernel_value(kernel, beta, cut)) / *rho;
  return out;
}

MomentResult moment(const KernelSpec& kernel, const SpaceParams& sp, MomentMode mode) {
  const double beta = sp.beta();
  const bool absolute = mode == MomentMode::Absolute;
  const auto& v = kernel.variant();

  if (auto* a = std::get_if<AtomicKernel>(&v)) {
    MomentResult r{0.0, 0.0, true};
    for (const auto& at : a->atoms) {
      const double w = std::pow(at.position, beta - 1.0);
      r.value += absolute ? cplx(std::abs(at.mass) * w) : at.mass * w;
    }
    return r;
  }
  if (auto* c = std::get_if<CesaroKernel>(&v)) {
    // int_1^inf t^{beta - nu - 1} dt
    const double re = c->nu.real() - beta;
    if (!(re > 0.0))
      throw Error(ErrorCode::DivergentMoment,
                  "Cesaro moment diverges: need p*Re(nu) > a+1 (Re nu = " + std::to_string(c->nu.real()) +
                      ", beta = " + std::to_string(beta) + ")");
    return {absolute ? cplx(1.0 / re) : 1.0 / (c->nu - beta), 0.0, true};
  }
  if (auto* pc = std::get_if<PowerCutKernel>(&v)) {
    // int_lo^hi t^{exponent + beta - 1} dt
    const cplx g = absolute ? cplx(pc->exponent.real() + beta) : pc->exponent + beta;
    const double a = std::log(pc->lo);
    if (!std::isfinite(pc->hi)) {
      if (!(g.real() < 0.0))
        throw Error(ErrorCode::DivergentMoment, "power kernel moment diverges at infinity");
      return {-std::exp(g * a) / g, 0.0, true};
    }
    const double b = std::log(pc->hi);
    if (std::abs(g) < 1e-300) return {b - a, 0.0, true};
    // (e^{g b} - e^{g a}) / g written to stay accurate for small |g|(b-a)
    const cplx d = g * (b - a);
    const cplx rel = std::abs(d) < 1e-5 ? cplx(b - a) * (1.0 + d / 2.0 + d * d / 6.0)
                                        : (std::exp(d) - 1.0) / g;
    return {std::exp(g * a) * rel, 0.0, true};
  }

  const LogPieces lp = log_pieces(kernel, beta);
  if (lp.cuts.size() < 2) return {0.0, 0.0, false};
  Estimate e;
  if (absolute) {
    e = quad::integrate_pieces(
        [&](double s) { return std::abs(log_kernel_value(kernel, beta, s, Side::Average)); }, lp.cuts);
  } else {
    e = quad::integrate_pieces([&](double s) { return log_kernel_value(kernel, beta, s, Side::Average); },
                               lp.cuts);
  }
  return {absolute ? cplx(e.value.real()) : e.value, e.err + lp.tail_bound, false};
}

KernelSpec truncate(const KernelSpec& kernel, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidDelta, "delta must lie in (0,1)");
  if (auto* a = std::get_if<AtomicKernel>(&kernel.variant())) {
    std::vector<Atom> kept;
    for (const auto& at : a->atoms)
      if (at.position >= delta && at.position < 1.0 / delta) kept.push_back(at);
    return KernelSpec::atomic(std::move(kept));
  }
  return KernelSpec::truncated(kernel, delta);
}

}  // namespace hsl
