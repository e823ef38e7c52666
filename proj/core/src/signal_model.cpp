// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "vsdoa/errors.hpp"
#include "vsdoa/rng.hpp"

namespace vsdoa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t sample_count(double duration_s, double sample_rate_hz) {
  if (!(duration_s > 0.0)) throw InvalidSpecError("duration must be positive");
  if (!(sample_rate_hz > 0.0)) throw InvalidSpecError("sample rate must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n < 2) throw InvalidSpecError("duration * sample_rate must be >= 2 samples");
  return n;
}

/// Scalar source waveform s(t), length n. Band noise is synthesized in
/// the frequency domain on the record's rfft grid with flat density
/// power/(f_hi - f_lo); DC and Nyquist are never excited.
std::vector<double> synth_source_wave(const SourceSpec& source, std::size_t n,
                                      double sample_rate_hz, std::uint64_t seed) {
  std::vector<double> wave(n, 0.0);
  if (const auto* tones = std::get_if<ToneSet>(&source.waveform)) {
    const double dt = 1.0 / sample_rate_hz;
    for (const Tone& tone : tones->tones) {
      if (tone.amplitude == 0.0) continue;
      const double w = kTwoPi * tone.freq_hz;
      for (std::size_t t = 0; t < n; ++t)
        wave[t] += tone.amplitude * std::cos(w * (static_cast<double>(t) * dt) + tone.phase_rad);
    }
    return wave;
  }
  const auto& band = std::get<BandNoise>(source.waveform);
  if (band.power == 0.0) return wave;
  const std::size_t n_bins = n / 2 + 1;
  const double density = band.power / (band.f_hi_hz - band.f_lo_hz);
  const double coeff_scale = std::sqrt(static_cast<double>(n) * sample_rate_hz * density / 2.0);
  rng::Substream stream(seed, rng::StreamRole::SourceWaveform);
  std::vector<cplx> spectrum(n_bins, cplx{0.0, 0.0});
  for (std::size_t k = 1; k + 1 < n_bins; ++k) {
    const double f = static_cast<double>(k) * sample_rate_hz / static_cast<double>(n);
    if (f < band.f_lo_hz || f > band.f_hi_hz) continue;
    spectrum[k] = coeff_scale * stream.complex_gaussian();
  }
  detail::RealInverseFft ifft(n);
  ifft.inverse(spectrum, wave);
  return wave;
}

void add_isotropic_noise(MultiChannelRecord& record, double variance, std::uint64_t seed) {
  if (variance == 0.0) return;
  const double sigma = std::sqrt(variance);
  rng::Substream sx(seed, rng::StreamRole::ChannelNoise, 0);
  rng::Substream sy(seed, rng::StreamRole::ChannelNoise, 1);
  for (double& v : record.x) v += sigma * sx.gaussian();
  for (double& v : record.y) v += sigma * sy.gaussian();
}

/// Frequency-domain coloring: per bin, scale an independent proper
/// complex Gaussian pair by the Hermitian square root of the target
/// density, then inverse-transform.
void add_anisotropic_noise(MultiChannelRecord& record, const NoiseSpec& noise,
                           std::uint64_t seed) {
  const std::size_t n = record.size();
  const std::size_t n_bins = n / 2 + 1;
  const double fs = record.sample_rate_hz;
  const double coeff_scale = std::sqrt(static_cast<double>(n) * fs / 2.0);
  rng::Substream sx(seed, rng::StreamRole::ChannelNoise, 0);
  rng::Substream sy(seed, rng::StreamRole::ChannelNoise, 1);
  std::vector<cplx> spec_x(n_bins, cplx{0.0, 0.0});
  std::vector<cplx> spec_y(n_bins, cplx{0.0, 0.0});
  for (std::size_t k = 1; k + 1 < n_bins; ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    const Herm2 psd = noise.psd_at(f);
    const cplx xi_x = sx.complex_gaussian();
    const cplx xi_y = sy.complex_gaussian();
    if (psd.trace() == 0.0) continue;
    const Herm2 root = herm_sqrt(psd);
    spec_x[k] = coeff_scale * (root.q * xi_x + root.r * xi_y);
    spec_y[k] = coeff_scale * (std::conj(root.r) * xi_x + root.s * xi_y);
  }
  detail::RealInverseFft ifft(n);
  std::vector<double> noise_t(n);
  ifft.inverse(spec_x, noise_t);
  for (std::size_t t = 0; t < n; ++t) record.x[t] += noise_t[t];
  ifft.inverse(spec_y, noise_t);
  for (std::size_t t = 0; t < n; ++t) record.y[t] += noise_t[t];
}

}  // namespace

std::vector<std::pair<double, double>> SourceSpec::band_support() const {
  std::vector<std::pair<double, double>> support;
  if (const auto* tones = std::get_if<ToneSet>(&waveform)) {
    for (const Tone& tone : tones->tones)
      if (tone.amplitude > 0.0) support.emplace_back(tone.freq_hz, tone.freq_hz);
  } else {
    const auto& band = std::get<BandNoise>(waveform);
    if (band.power > 0.0) support.emplace_back(band.f_lo_hz, band.f_hi_hz);
  }
  return support;
}

void SourceSpec::validate(double sample_rate_hz) const {
  const double nyquist = sample_rate_hz / 2.0;
  if (const auto* tones = std::get_if<ToneSet>(&waveform)) {
    for (const Tone& tone : tones->tones) {
      if (!(tone.freq_hz > 0.0) || tone.freq_hz >= nyquist)
        throw InvalidSpecError("tone frequency " + std::to_string(tone.freq_hz) +
                               " Hz outside (0, Nyquist)");
      if (tone.amplitude < 0.0) throw InvalidSpecError("tone amplitude must be nonnegative");
    }
  } else {
    const auto& band = std::get<BandNoise>(waveform);
    if (!(band.f_lo_hz > 0.0) || !(band.f_hi_hz > band.f_lo_hz) || band.f_hi_hz >= nyquist)
      throw InvalidSpecError("band-noise support must satisfy 0 < f_lo < f_hi < Nyquist");
    if (band.power < 0.0) throw InvalidSpecError("band-noise power must be nonnegative");
  }
}

Herm2 NoiseSpec::psd_at(double freq_hz) const {
  Herm2 out;
  if (const auto* aniso = std::get_if<AnisotropicNoise>(&kind)) {
    for (const AnisotropicBand& band : aniso->bands)
      if (freq_hz >= band.f_lo_hz && freq_hz <= band.f_hi_hz) out += band.psd;
  }
  return out;
}

void NoiseSpec::validate() const {
  if (condition_bound && !(*condition_bound >= 1.0))
    throw InvalidSpecError("condition bound must be >= 1");
  if (const auto* iso = std::get_if<IsotropicNoise>(&kind)) {
    if (iso->variance < 0.0) throw InvalidSpecError("noise variance must be nonnegative");
    return;
  }
  for (const AnisotropicBand& band : std::get<AnisotropicNoise>(kind).bands) {
    if (!(band.f_hi_hz > band.f_lo_hz))
      throw InvalidSpecError("anisotropic band must have f_lo < f_hi");
    if (!is_psd(band.psd, 1e-12))
      throw InvalidSpecError("anisotropic band density is not positive semidefinite");
    if (condition_bound) {
      const double lmin = lambda_min(band.psd);
      const double lmax = lambda_max(band.psd);
      if (lmin <= 0.0 || lmax / lmin > *condition_bound)
        throw InvalidSpecError("band density exceeds the declared condition bound");
    }
  }
}

NoiseSpec isotropic_noise(double variance) {
  NoiseSpec spec;
  spec.kind = IsotropicNoise{variance};
  return spec;
}

NoiseSpec oriented_band_noise(double floor_psd, double f_lo_hz, double f_hi_hz,
                              double oriented_psd, double orient_deg,
                              double floor_f_hi_hz) {
  const double rad = orient_deg * std::numbers::pi / 180.0;
  const double wx = std::cos(rad), wy = std::sin(rad);
  AnisotropicNoise aniso;
  if (floor_psd > 0.0)
    aniso.bands.push_back({0.0, floor_f_hi_hz, Herm2{floor_psd, floor_psd, 0.0}});
  if (oriented_psd > 0.0)
    aniso.bands.push_back(
        {f_lo_hz, f_hi_hz,
         Herm2{oriented_psd * wx * wx, oriented_psd * wy * wy, oriented_psd * wx * wy}});
  NoiseSpec spec;
  spec.kind = std::move(aniso);
  return spec;
}

MultiChannelRecord synth_plane_wave(const SourceSpec& source, const NoiseSpec& noise,
                                    double duration_s, double sample_rate_hz,
                                    std::uint64_t seed) {
  const std::size_t n = sample_count(duration_s, sample_rate_hz);
  source.validate(sample_rate_hz);
  noise.validate();

  const std::vector<double> wave = synth_source_wave(source, n, sample_rate_hz, seed);
  const double rad = source.azimuth_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(rad), uy = std::sin(rad);

  MultiChannelRecord record;
  record.sample_rate_hz = sample_rate_hz;
  record.x.resize(n);
  record.y.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    record.x[t] = ux * wave[t];
    record.y[t] = uy * wave[t];
  }
  if (const auto* iso = std::get_if<IsotropicNoise>(&noise.kind))
    add_isotropic_noise(record, iso->variance, seed);
  else
    add_anisotropic_noise(record, noise, seed);
  return record;
}

MultiChannelRecord add_interferer(const MultiChannelRecord& record,
                                  const SourceSpec& interferer, std::uint64_t seed) {
  interferer.validate(record.sample_rate_hz);
  MultiChannelRecord out = record;
  const std::vector<double> wave =
      synth_source_wave(interferer, record.size(), record.sample_rate_hz, seed);
  const double rad = interferer.azimuth_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(rad), uy = std::sin(rad);
  for (std::size_t t = 0; t < out.size(); ++t) {
    out.x[t] += ux * wave[t];
    out.y[t] += uy * wave[t];
  }
  return out;
}

}  // namespace vsdoa
