#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace bremsim {

// Unnormalized complex-to-complex transform of fixed length backed by FFTW.
// Plans are built with FFTW_ESTIMATE so results are bit-reproducible; plan
// creation is serialized internally, execution is safe from many threads as
// long as each thread owns its FftPlan.
class FftPlan {
public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  // out_m = sum_j in_j exp(-2 pi i j m / n). in and out may alias.
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
  // out_j = sum_m in_m exp(+2 pi i j m / n), no 1/n factor.
  void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

  // In-place transforms on the plan's own aligned buffer (avoids copies in
  // hot loops).
  std::span<std::complex<double>> buffer() noexcept;
  void forward_in_place();
  void backward_in_place();

private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bremsim
