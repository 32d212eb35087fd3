#pragma once

namespace hsl {

/// Worker count for parallel loops: the OpenMP default, capped by the
/// HSL_THREADS environment variable when it holds a positive integer.
int thread_count();

}  // namespace hsl
