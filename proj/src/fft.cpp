#include "hsl/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace hsl::fft {

namespace {
// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex planner_mutex;
}  // namespace

void transform(std::vector<cplx>& data, bool inverse) {
  if (data.size() < 2) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_1d(int(data.size()), ptr, ptr, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace hsl::fft
