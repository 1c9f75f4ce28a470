#include "shearlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace shearlab {

namespace {
// FFTW planning is not thread-safe; plan execution is.
std::mutex g_plan_mutex;
}  // namespace

void dft_inplace(std::vector<Complex>& data, const std::vector<int>& dims, int sign) {
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != data.size()) throw std::invalid_argument("dft extents do not match data size");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace shearlab
