// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "fft.hpp"
#include "vsdoa/errors.hpp"

namespace vsdoa {

namespace {

/// Compensated (Kahan) accumulator; the averaging over segments must not
/// depend on summation order beyond ~1e-12 relative.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::vector<double> window_samples(Window window, std::size_t length) {
  std::vector<double> w(length, 1.0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(length);  // periodic taper
  switch (window) {
    case Window::Hann:
      for (std::size_t i = 0; i < length; ++i)
        w[i] = 0.5 - 0.5 * std::cos(step * static_cast<double>(i));
      break;
    case Window::Hamming:
      for (std::size_t i = 0; i < length; ++i)
        w[i] = 0.54 - 0.46 * std::cos(step * static_cast<double>(i));
      break;
    case Window::Rectangular:
      break;
  }
  return w;
}

CsdSet welch_csd(const MultiChannelRecord& record, const SpectralConfig& config) {
  const std::size_t seg = config.segment_length;
  if (seg < 2) throw InvalidSpecError("segment_length must be >= 2");
  if (!(config.overlap >= 0.0 && config.overlap < 1.0))
    throw InvalidSpecError("overlap must be in [0, 1)");
  if (!(record.sample_rate_hz > 0.0)) throw InvalidSpecError("record sample rate must be positive");
  if (record.x.size() != record.y.size())
    throw InvalidSpecError("record channels have unequal lengths");
  if (record.size() < seg)
    throw InsufficientDataError("record shorter than one segment (" +
                                std::to_string(record.size()) + " < " + std::to_string(seg) + ")");

  const std::size_t hop =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   std::llround(static_cast<double>(seg) * (1.0 - config.overlap))));
  const std::size_t n_segments = (record.size() - seg) / hop + 1;
  const std::size_t n_bins = seg / 2 + 1;
  const double fs = record.sample_rate_hz;

  const std::vector<double> win = window_samples(config.window, seg);
  double window_power = 0.0;
  for (double w : win) window_power += w * w;

  detail::RealFft fft(seg);
  std::vector<double> buf(seg);
  std::vector<cplx> spec_x(n_bins), spec_y(n_bins);
  std::vector<Kahan> acc_q(n_bins), acc_s(n_bins), acc_r_re(n_bins), acc_r_im(n_bins);

  for (std::size_t k = 0; k < n_segments; ++k) {
    const std::size_t start = k * hop;
    for (std::size_t i = 0; i < seg; ++i) buf[i] = record.x[start + i] * win[i];
    fft.forward(buf, spec_x);
    for (std::size_t i = 0; i < seg; ++i) buf[i] = record.y[start + i] * win[i];
    fft.forward(buf, spec_y);
    for (std::size_t b = 0; b < n_bins; ++b) {
      acc_q[b].add(std::norm(spec_x[b]));
      acc_s[b].add(std::norm(spec_y[b]));
      const cplx cross = spec_x[b] * std::conj(spec_y[b]);
      acc_r_re[b].add(cross.real());
      acc_r_im[b].add(cross.imag());
    }
  }

  const double density_scale = 1.0 / (fs * window_power * static_cast<double>(n_segments));
  CsdSet out;
  out.bin_width_hz = fs / static_cast<double>(seg);
  out.bins.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    const bool interior = b != 0 && b != n_bins - 1;
    const double scale = density_scale * (interior ? 2.0 : 1.0);  // one-sided
    CsdBin& bin = out.bins[b];
    bin.freq_hz = static_cast<double>(b) * out.bin_width_hz;
    bin.q = acc_q[b].sum * scale;
    bin.s = acc_s[b].sum * scale;
    bin.r = cplx{acc_r_re[b].sum, acc_r_im[b].sum} * scale;
  }
  return out;
}

CsdSet select_band(const CsdSet& csd, double f_lo_hz, double f_hi_hz) {
  if (!(f_lo_hz < f_hi_hz)) throw InvalidSpecError("band requires f_lo < f_hi");
  CsdSet out;
  out.bin_width_hz = csd.bin_width_hz;
  for (const CsdBin& bin : csd.bins)
    if (bin.freq_hz >= f_lo_hz && bin.freq_hz <= f_hi_hz) out.bins.push_back(bin);
  if (out.bins.empty())
    throw EmptyBandError("no bins in [" + std::to_string(f_lo_hz) + ", " +
                         std::to_string(f_hi_hz) + "] Hz");
  return out;
}

std::string to_json(const CsdSet& csd) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CsdBin& bin : csd.bins) {
    arr.push_back({{"freq", bin.freq_hz},
                   {"q", bin.q},
                   {"s", bin.s},
                   {"r_re", bin.r.real()},
                   {"r_im", bin.r.imag()}});
  }
  return arr.dump();
}

CsdSet csd_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed CsdSet JSON: ") + e.what());
  }
  CsdSet out;
  for (const auto& item : arr) {
    CsdBin bin;
    bin.freq_hz = item.at("freq").get<double>();
    bin.q = item.at("q").get<double>();
    bin.s = item.at("s").get<double>();
    bin.r = cplx{item.at("r_re").get<double>(), item.at("r_im").get<double>()};
    out.bins.push_back(bin);
  }
  if (out.bins.size() >= 2)
    out.bin_width_hz = out.bins[1].freq_hz - out.bins[0].freq_hz;
  return out;
}

}  // namespace vsdoa
