#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hsfrac {

// Owning real-to-complex / complex-to-real transform pair on a fixed
// row-major shape (last axis fastest). Unnormalized in both directions:
// backward(forward(x)) == size() * x. Not copyable; each instance owns its
// buffers so distinct instances may run concurrently.
class RealFFT {
 public:
  explicit RealFFT(std::vector<int> shape);
  ~RealFFT();
  RealFFT(const RealFFT&) = delete;
  RealFFT& operator=(const RealFFT&) = delete;

  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return real_size_; }
  std::size_t spectrum_size() const { return complex_size_; }
  // Length of the last axis in the half spectrum.
  int half_extent() const { return shape_.back() / 2 + 1; }

  std::span<double> real() { return {real_, real_size_}; }
  std::span<std::complex<double>> spectrum() { return {spec_, complex_size_}; }

  void forward();   // real() -> spectrum()
  void backward();  // spectrum() -> real(); overwrites spectrum()

 private:
  std::vector<int> shape_;
  std::size_t real_size_;
  std::size_t complex_size_;
  double* real_;
  std::complex<double>* spec_;
  void* plan_fwd_;
  void* plan_bwd_;
};

}  // namespace hsfrac
