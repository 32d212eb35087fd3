#pragma once

#include <cstddef>
#include <vector>

#include "hsl/kernel.hpp"
#include "hsl/space.hpp"

namespace hsl {

/// Uniform grid s_j = -S + j h, h = 2S/N, j = 0..N-1, in the log variable
/// s = ln t. Node N/2 sits exactly at s = 0.
class LogGrid {
 public:
  LogGrid(double S, std::size_t N);

  double S() const noexcept { return S_; }
  std::size_t N() const noexcept { return N_; }
  double h() const noexcept { return h_; }
  double node(std::size_t j) const noexcept { return -S_ + double(j) * h_; }
  std::vector<double> nodes() const;

  /// DFT frequency pi m / S paired with bin m in -N/2 .. N/2-1.
  double frequency(long m) const noexcept;

  bool operator==(const LogGrid& o) const noexcept { return S_ == o.S_ && N_ == o.N_; }

 private:
  double S_;
  std::size_t N_;
  double h_;
};

struct LogKernel {
  LogGrid grid;
  /// Pointwise k(s_j) = e^{beta s_j} phi(e^{s_j}), right-continuous at jumps.
  std::vector<cplx> values;
  /// Same, but the mean of the one-sided limits wherever a node sits on a
  /// jump. These are the trapezoid-consistent samples.
  std::vector<cplx> samples;
  /// 2S-periodization sum_n k(s_j + 2Sn) of the jump-averaged kernel; this
  /// is what the circulant discretization convolves with.
  std::vector<cplx> periodic;
  /// h * sum |samples|.
  double l1_estimate = 0.0;
  /// Mass of |k| outside [-S, S].
  double tail_bound = 0.0;
  double beta = 0.0;
};

LogKernel log_kernel(const KernelSpec& kernel, const SpaceParams& sp, const LogGrid& grid);

enum class Direction { Forward, Inverse };

/// Forward: g_j = e^{beta s_j} f(e^{s_j}) from samples on t_j = e^{s_j};
/// Inverse: f_j = t_j^{-beta} g_j. Exact pointwise inverses of each other.
std::vector<cplx> unitary(Direction dir, const std::vector<cplx>& f, const SpaceParams& sp,
                          const LogGrid& grid);

/// (h sum |g_j|^p)^{1/p} on the log grid.
double discrete_norm_log(const std::vector<cplx>& g, double p, const LogGrid& grid);

/// (sum |f_j|^p t_j^a w_j)^{1/p} on the geometric grid with w_j = t_j h,
/// the weights induced by t = e^s.
double discrete_norm_geometric(const std::vector<cplx>& f, const SpaceParams& sp, const LogGrid& grid);

}  // namespace hsl
