#pragma once

#include <vector>

#include "hsl/space.hpp"

namespace hsl::fft {

/// In-place unnormalized DFT: X_m = sum_j x_j e^{-2 pi i jm/N} (forward) or
/// with e^{+...} (inverse, no 1/N factor). Any length is accepted.
void transform(std::vector<cplx>& data, bool inverse = false);

}  // namespace hsl::fft
