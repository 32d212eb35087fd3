#pragma once

#include <iosfwd>
#include <vector>

#include "hsl/kernel.hpp"
#include "hsl/operator.hpp"
#include "hsl/space.hpp"

namespace hsl {

/// f_{eps,xi}(z) = (z + i)^{-beta - eps + i xi}, principal branch.
struct TestFunctionParams {
  double epsilon;
  double xi;
  SpaceParams sp;
};

FunctionHandle test_function(const TestFunctionParams& params);

/// Norm settings for the slowly decaying test functions: far truncation so
/// that lower-order terms of H f are negligible where the power tail is fitted.
NormOptions test_function_norm_options();

struct AsymptoticsRow {
  double epsilon;
  double norm;
  double scaled;  // norm * eps^{1/p}
};

std::vector<AsymptoticsRow> norm_asymptotics(const std::vector<double>& epsilons, double xi, const SpaceParams& sp,
                                             const NormOptions& opt = test_function_norm_options());

struct ResidualRow {
  double epsilon;
  double xi;
  double residual;  // ||H f - k^(xi) f|| / ||f||
  double norm;      // ||f||
};

/// Boundary route for Lebesgue/Hardy (H_phi on the real line), holomorphic
/// route plus the area norm for Bergman.
ResidualRow eigen_residual(const KernelSpec& kernel, const TestFunctionParams& params,
                           const NormOptions& opt = test_function_norm_options());

struct SymbolSup {
  double value;
  double argmax_xi;
};

/// sup over the real line of |k^|, sampled densely and refined by Brent.
SymbolSup symbol_sup(const KernelSpec& kernel, const SpaceParams& sp);

/// sup |k^| (a lower bound for the operator norm).
double lower_norm_bound(const KernelSpec& kernel, const SpaceParams& sp);

struct NormBounds {
  double sup_modulus;
  double moment_signed_abs;
  double lower;  // max of the two above
  double upper;  // Absolute moment
};

NormBounds norm_bounds(const KernelSpec& kernel, const SpaceParams& sp);

struct EmpiricalNorm {
  double value;  // max ratio
  std::vector<double> xi;
  std::vector<double> ratios;  // ||H f|| / ||f|| per test function
};

/// Largest ||H f|| / ||f|| over f_{eps,xi_j} with xi_j spread around the
/// symbol's argmax. The deficit below the true norm is O(eps).
EmpiricalNorm empirical_norm(const KernelSpec& kernel, const SpaceParams& sp, std::size_t count = 20,
                             double epsilon = 1e-4, const NormOptions& opt = test_function_norm_options());

/// CSV with header "epsilon,xi,residual,norm".
void write_residual_csv(std::ostream& os, const std::vector<ResidualRow>& rows);

}  // namespace hsl
