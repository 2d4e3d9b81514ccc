#include "fft.hpp"

namespace clm::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

FftPair::FftPair(int n) : n_(n) {
  FftwBuffer in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
  std::lock_guard lock(fftw_planner_mutex());
  forward_ = fftw_plan_dft_1d(n, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(n, in.data, out.data, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftPair::~FftPair() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
}

}  // namespace clm::detail
