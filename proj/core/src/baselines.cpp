// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "vsdoa/errors.hpp"

namespace vsdoa {

namespace {

// Linear-phase band-pass: 257-tap Hamming-windowed sinc. The covariance
// is taken over steady-state samples only, skipping the warm-up.
constexpr std::size_t kFirTaps = 257;
constexpr double kDegenerateGapRatio = 1e-6;

std::vector<double> bandpass_taps(double f_lo_hz, double f_hi_hz, double fs) {
  const double nyquist = fs / 2.0;
  const double w_hi = std::min(f_hi_hz, nyquist) / nyquist;  // normalized [0, 1]
  const double w_lo = std::max(f_lo_hz, 0.0) / nyquist;
  const auto half = static_cast<long>(kFirTaps / 2);
  std::vector<double> taps(kFirTaps);
  for (long i = 0; i < static_cast<long>(kFirTaps); ++i) {
    const long m = i - half;
    double lp_hi, lp_lo;
    if (m == 0) {
      lp_hi = w_hi;
      lp_lo = w_lo;
    } else {
      const double pm = std::numbers::pi * static_cast<double>(m);
      lp_hi = std::sin(pm * w_hi) / pm;
      lp_lo = std::sin(pm * w_lo) / pm;
    }
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(kFirTaps - 1));
    taps[static_cast<std::size_t>(i)] = (lp_hi - lp_lo) * window;
  }
  return taps;
}

std::vector<double> convolve_valid(const std::vector<double>& x,
                                   const std::vector<double>& h) {
  const std::size_t n = x.size(), k = h.size();
  std::vector<double> out(n - k + 1);
  for (std::size_t t = 0; t + k <= n; ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += h[i] * x[t + k - 1 - i];
    out[t] = acc;
  }
  return out;
}

}  // namespace

DoaEstimate covariance_doa(const MultiChannelRecord& record, double f_lo_hz,
                           double f_hi_hz) {
  if (record.size() == 0) throw InvalidSpecError("covariance_doa: empty record");
  if (!(record.sample_rate_hz > 0.0))
    throw InvalidSpecError("covariance_doa: sample rate must be positive");
  if (!(f_lo_hz < f_hi_hz)) throw InvalidSpecError("covariance_doa: band requires f_lo < f_hi");
  if (record.size() < kFirTaps + 1)
    throw InsufficientDataError("covariance_doa: record shorter than the filter");

  const std::vector<double> taps = bandpass_taps(f_lo_hz, f_hi_hz, record.sample_rate_hz);
  const std::vector<double> xf = convolve_valid(record.x, taps);
  const std::vector<double> yf = convolve_valid(record.y, taps);

  double cxx = 0.0, cyy = 0.0, cxy = 0.0;
  for (std::size_t t = 0; t < xf.size(); ++t) {
    cxx += xf[t] * xf[t];
    cyy += yf[t] * yf[t];
    cxy += xf[t] * yf[t];
  }
  const double inv_n = 1.0 / static_cast<double>(xf.size());
  const Herm2 cov{cxx * inv_n, cyy * inv_n, cplx{cxy * inv_n, 0.0}};

  const bool degenerate = eigengap(cov) < kDegenerateGapRatio * cov.trace();
  WeightVector weights;  // stays empty for the covariance method
  weights.norm_kind = NormKind::L2;
  weights.a = Eigen::VectorXd();
  DoaEstimate est = assemble_estimate(cov, std::move(weights), false,
                                      StandardizationScheme::None, NormKind::L2);
  est.degenerate = degenerate;
  return est;
}

DoaEstimate uniform_weight_doa(const CsdSet& csd, StandardizationScheme scheme) {
  const StandardizedCsd std_csd = standardize(csd, scheme);
  const auto n = static_cast<Eigen::Index>(std_csd.csd.size());
  WeightVector weights;
  weights.norm_kind = NormKind::L2;
  weights.a = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Herm2 combined = combine(std_csd.csd, weights);
  return assemble_estimate(combined, std::move(weights), false, scheme, NormKind::L2);
}

}  // namespace vsdoa
