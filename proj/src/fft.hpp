#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <new>

namespace clm::detail {

std::mutex& fftw_planner_mutex();

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  std::complex<double>* c() { return reinterpret_cast<std::complex<double>*>(data); }
  fftw_complex* data;
};

// Forward and backward complex plans of one size. Execution goes through
// the new-array interface so one plan serves every caller and thread.
class FftPair {
 public:
  explicit FftPair(int n);
  ~FftPair();
  FftPair(const FftPair&) = delete;
  FftPair& operator=(const FftPair&) = delete;

  void forward(FftwBuffer& in, FftwBuffer& out) const { fftw_execute_dft(forward_, in.data, out.data); }
  void backward(FftwBuffer& in, FftwBuffer& out) const { fftw_execute_dft(backward_, in.data, out.data); }
  int size() const { return n_; }

 private:
  int n_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace clm::detail
