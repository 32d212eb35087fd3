#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hsl/space.hpp"

namespace hsl {

struct Estimate {
  cplx value{};
  double err = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    err += o.err;
    return *this;
  }
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  unsigned max_depth = 20;
};

namespace quad {

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b] (finite): the panel
/// with the largest error is bisected until the summed error is below
/// max(rel_tol * L1, abs_tol). Boost's own recursion measures its tolerance
/// against the (possibly cancelling) value, so it only supplies the panels.
/// The integrand may return double or complex.
template <class F>
Estimate integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
  if (!(b > a)) return {};
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto g = [&](double x) -> cplx { return cplx(f(x)); };
  struct Panel {
    double lo, hi, err, l1;
    cplx value;
    unsigned depth;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  auto make = [&](double lo, double hi, unsigned depth) {
    Panel p{lo, hi, 0.0, 0.0, {}, depth};
    p.value = GK::integrate(g, lo, hi, 0, 0.0, &p.err, &p.l1);
    return p;
  };
  std::vector<Panel> heap{make(a, b, 0)};
  double err = heap[0].err, l1 = heap[0].l1;
  cplx value = heap[0].value;
  constexpr std::size_t max_panels = 4096;
  while (err > std::max(opt.rel_tol * l1, opt.abs_tol) && heap.size() < max_panels) {
    std::pop_heap(heap.begin(), heap.end());
    const Panel p = heap.back();
    if (p.depth >= opt.max_depth) {
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    Panel l = make(p.lo, mid, p.depth + 1), r = make(mid, p.hi, p.depth + 1);
    value += l.value + r.value - p.value;
    err += l.err + r.err - p.err;
    l1 += l.l1 + r.l1 - p.l1;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end());
  }
  // re-sum to shed the drift of the running updates
  value = 0.0;
  err = 0.0;
  for (const auto& p : heap) {
    value += p.value;
    err += p.err;
  }
  return {value, err};
}

/// Integrates over [a, b] split at the given interior points.
template <class F>
Estimate integrate_pieces(F&& f, const std::vector<double>& cuts, const QuadOptions& opt = {}) {
  Estimate total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1], opt);
  return total;
}

/// One 5-point Gauss-Legendre panel per piece, with the 2-point rule as the
/// error estimate. For many short pieces of smooth data (kinks at the cuts).
template <class F>
Estimate gauss_panels(F&& f, const std::vector<double>& cuts) {
  static constexpr double x5[] = {0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr double w5[] = {0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
  static constexpr double x2 = 0.5773502691896258;
  Estimate total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double m = 0.5 * (cuts[i] + cuts[i + 1]), r = 0.5 * (cuts[i + 1] - cuts[i]);
    if (!(r > 0.0)) continue;
    cplx g5 = w5[0] * cplx(f(m));
    for (int k = 1; k < 3; ++k) g5 += w5[k] * (cplx(f(m - r * x5[k])) + cplx(f(m + r * x5[k])));
    const cplx g2 = cplx(f(m - r * x2)) + cplx(f(m + r * x2));
    total.value += r * g5;
    total.err += r * std::abs(g5 - g2);
  }
  return total;
}

/// Filon-type quadrature of int_a^b g(s) e^{-i xi s} ds for smooth,
/// non-oscillatory g: on each panel g is interpolated at 17 Chebyshev-Lobatto
/// points and the interpolant is integrated against the exponential exactly
/// (Gauss-Legendre while the panel holds few oscillations, exact integration
/// by parts beyond). Panels are bisected until the trailing Chebyshev
/// coefficients fall below tol / (b - a); the cost does not grow with |xi|.
Estimate filon(const std::function<cplx(double)>& g, double a, double b, double xi, double tol,
               unsigned max_depth = 30);

/// Gauss-Jacobi nodes and weights on [-1, 1] for the weight
/// (1-x)^alpha (1+x)^beta.
void gauss_jacobi(std::size_t n, double alpha, double beta, std::vector<double>& nodes,
                  std::vector<double>& weights);

}  // namespace quad
}  // namespace hsl
