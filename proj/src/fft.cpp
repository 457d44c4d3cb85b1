#include "bremsim/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace bremsim {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlan::Impl {
  fftw_complex* data = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (data) fftw_free(data);
  }
};

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw std::invalid_argument("FftPlan: zero length");
  std::lock_guard lock(planner_mutex());
  impl_->data = fftw_alloc_complex(n);
  if (!impl_->data) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  impl_->fwd = fftw_plan_dft_1d(len, impl_->data, impl_->data, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_1d(len, impl_->data, impl_->data, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FftPlan: FFTW planning failed");
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

std::span<std::complex<double>> FftPlan::buffer() noexcept {
  return {reinterpret_cast<std::complex<double>*>(impl_->data), n_};
}

void FftPlan::forward_in_place() { fftw_execute(impl_->fwd); }
void FftPlan::backward_in_place() { fftw_execute(impl_->bwd); }

void FftPlan::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FftPlan: size mismatch");
  auto buf = buffer();
  std::copy(in.begin(), in.end(), buf.begin());
  forward_in_place();
  std::copy(buf.begin(), buf.end(), out.begin());
}

void FftPlan::backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FftPlan: size mismatch");
  auto buf = buffer();
  std::copy(in.begin(), in.end(), buf.begin());
  backward_in_place();
  std::copy(buf.begin(), buf.end(), out.begin());
}

}  // namespace bremsim
