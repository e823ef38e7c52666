// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace vsdoa::detail {

namespace {
// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RealFft: length must be >= 2");
  in_ = fftw_alloc_real(n);
  out_ = fftw_alloc_complex(n / 2 + 1);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_,
                               static_cast<fftw_complex*>(out_), FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != output_size())
    throw std::invalid_argument("RealFft: buffer size mismatch");
  std::memcpy(in_, in.data(), n_ * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_));
  std::memcpy(out.data(), out_, output_size() * sizeof(std::complex<double>));
}

RealInverseFft::RealInverseFft(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RealInverseFft: length must be >= 2");
  in_ = fftw_alloc_complex(n / 2 + 1);
  out_ = fftw_alloc_real(n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), static_cast<fftw_complex*>(in_),
                               out_, FFTW_ESTIMATE);
}

RealInverseFft::~RealInverseFft() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

void RealInverseFft::inverse(std::span<const std::complex<double>> spectrum,
                             std::span<double> out) {
  if (spectrum.size() != n_ / 2 + 1 || out.size() != n_)
    throw std::invalid_argument("RealInverseFft: buffer size mismatch");
  std::memcpy(in_, spectrum.data(), spectrum.size() * sizeof(std::complex<double>));
  fftw_execute(static_cast<fftw_plan>(plan_));
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = out_[i] * inv_n;
}

}  // namespace vsdoa::detail
