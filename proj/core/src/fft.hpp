// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vsdoa::detail {

/// Real-to-complex forward FFT of a fixed length, FFTW-backed. An
/// instance owns its plan and scratch buffers, so it is not safe to
/// share one instance between threads; separate instances are.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t input_size() const { return n_; }
  std::size_t output_size() const { return n_ / 2 + 1; }

  /// out must hold n/2+1 coefficients.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);

 private:
  std::size_t n_;
  void* plan_;
  double* in_;
  void* out_;
};

/// Complex-to-real inverse FFT, normalized so that
/// inverse(forward(x)) == x.
class RealInverseFft {
 public:
  explicit RealInverseFft(std::size_t n);
  ~RealInverseFft();
  RealInverseFft(const RealInverseFft&) = delete;
  RealInverseFft& operator=(const RealInverseFft&) = delete;

  std::size_t output_size() const { return n_; }

  /// spectrum must hold n/2+1 coefficients; out must hold n samples.
  void inverse(std::span<const std::complex<double>> spectrum, std::span<double> out);

 private:
  std::size_t n_;
  void* plan_;
  void* in_;
  double* out_;
};

}  // namespace vsdoa::detail
