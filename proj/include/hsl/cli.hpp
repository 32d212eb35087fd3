#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsl/io.hpp"
#include "hsl/kernel.hpp"
#include "hsl/space.hpp"
#include "hsl/transform.hpp"

namespace hsl {

/// Everything a run needs. JSON form (all keys optional except kernel):
///   {"kernel": {...}, "space": {"p":2, "a":0, "kind":"hardy"},
///    "grid": {"S":20, "N":16384}, "xi_range": {"max":200, "count":4096},
///    "lambdas": [[5,0], "3i"], "epsilons": [0.1, 0.01], "xis": [0, 1, 3],
///    "tol": 1e-4, "out": "results", "svg": true}
struct RunConfig {
  std::optional<KernelSpec> kernel;
  double p = 2.0;
  double a = 0.0;
  SpaceKind kind = SpaceKind::HardyBoundary;
  std::optional<double> S;
  std::optional<std::size_t> N;
  double xi_max = 200.0;
  std::size_t xi_count = 4096;
  std::vector<cplx> lambdas;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
  std::vector<double> xis{0.0, 1.0, 3.0};
  std::optional<double> tol;
  std::string out = ".";
  bool svg = false;

  SpaceParams space() const { return SpaceParams(p, a, kind); }
  /// The configured grid, falling back to fallback's S and N.
  LogGrid grid_or(const LogGrid& fallback) const;
};

/// A bare kernel object is accepted too (it becomes {"kernel": ...}).
RunConfig config_from_json(const json& j);

/// Entry point of the hsl tool. Returns 0 on pass, 2 when a verification
/// fails, 1 on errors (reported on err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsl
