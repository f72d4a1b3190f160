#include "hsfrac/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

#include "hsfrac/error.hpp"

namespace hsfrac {
namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFFT::RealFFT(std::vector<int> shape) : shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 3) throw DomainError("RealFFT rank must be 1..3");
  real_size_ = 1;
  for (int e : shape_) {
    if (e < 2) throw DomainError("RealFFT extents must be >= 2");
    real_size_ *= static_cast<std::size_t>(e);
  }
  complex_size_ = real_size_ / static_cast<std::size_t>(shape_.back()) *
                  static_cast<std::size_t>(half_extent());

  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * real_size_));
  spec_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * complex_size_));
  if (real_ == nullptr || spec_ == nullptr) {
    fftw_free(real_);
    fftw_free(spec_);
    throw std::bad_alloc();
  }
  auto* cspec = reinterpret_cast<fftw_complex*>(spec_);
  const int rank = static_cast<int>(shape_.size());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_r2c(rank, shape_.data(), real_, cspec, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_c2r(rank, shape_.data(), cspec, real_, FFTW_ESTIMATE);
}

RealFFT::~RealFFT() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  }
  fftw_free(real_);
  fftw_free(spec_);
}

void RealFFT::forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }

void RealFFT::backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

}  // namespace hsfrac
