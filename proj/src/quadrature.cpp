#include "hsl/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <array>
#include <memory>

#include "hsl/errors.hpp"

namespace hsl::quad {

void gauss_jacobi(std::size_t n, double alpha, double beta, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  if (n == 0 || !(alpha > -1.0) || !(beta > -1.0))
    throw Error(ErrorCode::InvalidArgument, "Gauss-Jacobi needs n > 0 and alpha, beta > -1");
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> w(
      gsl_integration_fixed_alloc(gsl_integration_fixed_jacobi, n, -1.0, 1.0, alpha, beta),
      &gsl_integration_fixed_free);
  if (!w) throw Error(ErrorCode::EvaluationFailure, "GSL could not build Gauss-Jacobi nodes");
  const double* x = gsl_integration_fixed_nodes(w.get());
  const double* wt = gsl_integration_fixed_weights(w.get());
  nodes.assign(x, x + n);
  weights.assign(wt, wt + n);
}

namespace {

constexpr int kDeg = 16;  // interpolation degree per panel

struct Legendre {
  std::vector<double> x, w;
  explicit Legendre(std::size_t m) {
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(m);
    x.resize(m);
    w.resize(m);
    for (std::size_t i = 0; i < m; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &x[i], &w[i], t);
    gsl_integration_glfixed_table_free(t);
  }
};

const Legendre& legendre_for(double theta) {
  static const Legendre l64(64), l128(128), l256(256);
  const double a = std::abs(theta);
  if (a <= 40.0) return l64;
  if (a <= 120.0) return l128;
  return l256;
}

struct ChebNodes {
  std::array<double, kDeg + 1> x;
  std::array<std::array<double, kDeg + 1>, kDeg + 1> cosines;
  ChebNodes() {
    for (int j = 0; j <= kDeg; ++j) {
      x[j] = std::cos(M_PI * j / kDeg);
      for (int k = 0; k <= kDeg; ++k) cosines[j][k] = std::cos(M_PI * j * k / kDeg);
    }
  }
};

const ChebNodes& cheb() {
  static const ChebNodes c;
  return c;
}

using Coeffs = std::array<cplx, kDeg + 1>;

// Chebyshev coefficients of the interpolant through values at x_j = cos(pi j/n).
Coeffs cheb_coeffs(const std::array<cplx, kDeg + 1>& v) {
  const auto& c = cheb();
  Coeffs a{};
  for (int k = 0; k <= kDeg; ++k) {
    cplx acc = 0.5 * (v[0] * c.cosines[0][k] + v[kDeg] * c.cosines[kDeg][k]);
    for (int j = 1; j < kDeg; ++j) acc += v[j] * c.cosines[j][k];
    a[k] = acc * (2.0 / kDeg);
  }
  a[0] *= 0.5;
  a[kDeg] *= 0.5;
  return a;
}

cplx clenshaw(const Coeffs& a, int deg, double x) {
  cplx b1 = 0.0, b2 = 0.0;
  for (int k = deg; k >= 1; --k) {
    const cplx b0 = a[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return a[0] + x * b1 - b2;
}

// int_{-1}^{1} p(x) e^{-i theta x} dx for p = sum a_k T_k.
cplx cheb_exp_integral(const Coeffs& a, double theta) {
  if (std::abs(theta) <= 256.0) {
    const Legendre& gl = legendre_for(theta);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i)
      acc += gl.w[i] * clenshaw(a, kDeg, gl.x[i]) * std::exp(cplx(0.0, -theta * gl.x[i]));
    return acc;
  }
  // Repeated integration by parts terminates for a polynomial:
  // int p e^{cx} = e^{cx} sum_k (-1)^k p^{(k)} / c^{k+1},  c = -i theta.
  const cplx c(0.0, -theta);
  Coeffs d = a;
  int deg = kDeg;
  cplx at_p = 0.0, at_m = 0.0;
  cplx cpow = c;
  double sign = 1.0;
  for (int k = 0; k <= kDeg; ++k) {
    cplx vp = 0.0, vm = 0.0;
    for (int j = 0; j <= deg; ++j) {
      vp += d[j];
      vm += (j % 2 ? -1.0 : 1.0) * d[j];
    }
    at_p += sign * vp / cpow;
    at_m += sign * vm / cpow;
    if (deg == 0) break;
    // derivative coefficients
    Coeffs e{};
    for (int j = deg; j >= 1; --j) e[j - 1] = (j + 1 <= deg - 1 ? e[j + 1] : cplx(0.0)) + 2.0 * double(j) * d[j];
    e[0] *= 0.5;
    d = e;
    --deg;
    cpow *= c;
    sign = -sign;
  }
  return std::exp(c) * at_p - std::exp(-c) * at_m;
}

}  // namespace

Estimate filon(const std::function<cplx(double)>& g, double a, double b, double xi, double tol,
               unsigned max_depth) {
  if (!(b > a)) return {};
  const double L = b - a;
  const auto& ch = cheb();
  struct Panel {
    double u, v;
    unsigned depth;
  };
  std::vector<Panel> stack;
  const int n0 = std::max(1, int(std::ceil(L)));
  for (int i = n0 - 1; i >= 0; --i)
    stack.push_back({a + L * i / n0, i + 1 == n0 ? b : a + L * (i + 1) / n0, 0});
  Estimate total;
  std::array<cplx, kDeg + 1> vals;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.u + p.v), r = 0.5 * (p.v - p.u);
    for (int j = 0; j <= kDeg; ++j) {
      // endpoints exactly, so g sees the panel ends
      const double s = j == 0 ? p.v : (j == kDeg ? p.u : m + r * ch.x[j]);
      vals[j] = g(s);
    }
    const Coeffs c = cheb_coeffs(vals);
    double scale = 0.0;
    for (const auto& x : c) scale = std::max(scale, std::abs(x));
    const double tail = std::abs(c[kDeg - 1]) + std::abs(c[kDeg]);
    const bool converged = tail <= std::max(tol / L, 4e-16 * scale);
    if (converged || p.depth >= max_depth) {
      total.value += r * std::exp(cplx(0.0, -xi * m)) * cheb_exp_integral(c, xi * r);
      total.err += 2.0 * r * tail;
    } else {
      stack.push_back({m, p.v, p.depth + 1});
      stack.push_back({p.u, m, p.depth + 1});
    }
  }
  return total;
}

}  // namespace hsl::quad
