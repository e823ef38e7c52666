// SPDX-License-Identifier: Apache-2.0
//
// Test-only generators and oracles. Everything here is deliberately
// independent of the library code paths it is used to check: the DFT is
// the O(n^2) definition, eigengaps come from a separate solver, and the
// brute-force searches enumerate the feasible sets directly.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "vsdoa/eigengap.hpp"
#include "vsdoa/hermitian2.hpp"
#include "vsdoa/spectral.hpp"

namespace test_support {

using vsdoa::cplx;

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
  cplx complex_gaussian() { return {gaussian(), gaussian()}; }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
  }
};

/// Random Hermitian PSD 2x2 via A A^H with complex Gaussian A.
inline vsdoa::Herm2 random_psd(Rng& rng, double scale = 1.0) {
  const cplx a = rng.complex_gaussian(), b = rng.complex_gaussian();
  const cplx c = rng.complex_gaussian(), d = rng.complex_gaussian();
  vsdoa::Herm2 m;
  m.q = (std::norm(a) + std::norm(b)) * scale;
  m.s = (std::norm(c) + std::norm(d)) * scale;
  m.r = (a * std::conj(c) + b * std::conj(d)) * scale;
  return m;
}

inline vsdoa::CsdSet random_csd_set(Rng& rng, std::size_t n, double scale = 1.0) {
  vsdoa::CsdSet csd;
  csd.bin_width_hz = 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const vsdoa::Herm2 m = random_psd(rng, scale);
    csd.bins.push_back({2.0 * static_cast<double>(i + 1), m.q, m.s, m.r});
  }
  return csd;
}

/// O(n^2) textbook DFT. Oracle for the FFT-backed spectral estimator.
inline std::vector<cplx> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    cplx acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double phase =
          -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(t) /
          static_cast<double>(n);
      acc += x[t] * cplx{std::cos(phase), std::sin(phase)};
    }
    out[k] = acc;
  }
  return out;
}

/// Third-route eigengap: Eigen's complex self-adjoint solver, no shared
/// code with the closed-form implementations under test.
inline double eigengap_eigen(const vsdoa::Herm2& m) {
  Eigen::Matrix2cd h;
  h << cplx{m.q, 0.0}, m.r, std::conj(m.r), cplx{m.s, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
  return solver.eigenvalues()(1) - solver.eigenvalues()(0);
}

/// Weighted-sum eigengap via the Eigen route, for grids of weights.
inline double weighted_eigengap_eigen(const vsdoa::CsdSet& csd,
                                      const Eigen::VectorXd& a) {
  vsdoa::Herm2 sum;
  for (std::size_t i = 0; i < csd.size(); ++i)
    sum += a(static_cast<Eigen::Index>(i)) * csd.bins[i].matrix();
  return eigengap_eigen(sum);
}

/// Brute force over the 1-norm extreme points {0, e_1, ..., e_n}.
inline double l1_brute_force(const Eigen::MatrixXd& r) {
  double best = 0.0;  // the zero vector scores 0
  for (Eigen::Index i = 0; i < r.rows(); ++i) best = std::max(best, r(i, i));
  return best;
}

/// Grid search over the nonnegative unit quarter circle for 2x2 forms.
inline double quarter_circle_max(const Eigen::MatrixXd& r, double step_rad = 1e-3) {
  double best = -std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= std::numbers::pi / 2.0 + 1e-12; t += step_rad) {
    const Eigen::Vector2d a{std::cos(t), std::sin(t)};
    best = std::max(best, a.dot(r * a));
  }
  return best;
}

inline double axial_error_deg(double a, double b) {
  double ra = std::fmod(a, 180.0);
  if (ra < 0) ra += 180.0;
  double rb = std::fmod(b, 180.0);
  if (rb < 0) rb += 180.0;
  const double d = std::abs(ra - rb);
  return std::min(d, 180.0 - d);
}

inline double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace test_support
