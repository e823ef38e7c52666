// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "vsdoa/hermitian2.hpp"

namespace vsdoa {

/// One sinusoidal component of a tone-set source.
struct Tone {
  double freq_hz = 0.0;
  double amplitude = 0.0;
  double phase_rad = 0.0;
};

struct ToneSet {
  std::vector<Tone> tones;
};

/// Band-limited Gaussian noise source with flat spectral density
/// power / (f_hi - f_lo) inside [f_lo, f_hi].
struct BandNoise {
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
  double power = 0.0;
};

/// A plane-wave source: azimuth plus scalar waveform description.
/// Azimuth is measured counterclockwise from the +x axis; the source
/// projects onto the channels through u = (cos az, sin az).
struct SourceSpec {
  double azimuth_deg = 0.0;  // [0, 360)
  std::variant<ToneSet, BandNoise> waveform = ToneSet{};

  /// Frequency intervals the source occupies (band support).
  std::vector<std::pair<double, double>> band_support() const;
  void validate(double sample_rate_hz) const;
};

struct IsotropicNoise {
  double variance = 0.0;  // per-channel time-domain variance
};

/// Per-bin 2x2 Hermitian noise spectral density, piecewise constant:
/// the densities of all bands containing a frequency are summed.
struct AnisotropicBand {
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
  Herm2 psd;  // one-sided, per Hz
};

struct AnisotropicNoise {
  std::vector<AnisotropicBand> bands;
};

struct NoiseSpec {
  std::variant<IsotropicNoise, AnisotropicNoise> kind = IsotropicNoise{};
  std::optional<double> condition_bound;  // C >= 1 when set

  /// Anisotropic spectral density at a frequency (zero matrix outside
  /// all bands). For isotropic noise the equivalent flat density is
  /// 2*variance/sample_rate, handled by the generator directly.
  Herm2 psd_at(double freq_hz) const;
  bool is_isotropic() const { return std::holds_alternative<IsotropicNoise>(kind); }
  void validate() const;
};

/// Convenience constructors for common noise fields.
NoiseSpec isotropic_noise(double variance);
/// Isotropic floor plus a rank-one component of the given density
/// oriented along azimuth orient_deg over [f_lo, f_hi].
NoiseSpec oriented_band_noise(double floor_psd, double f_lo_hz, double f_hi_hz,
                              double oriented_psd, double orient_deg,
                              double floor_f_hi_hz);

/// Two-channel (x, y particle velocity) time series at a fixed rate.
struct MultiChannelRecord {
  double sample_rate_hz = 0.0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  double duration_s() const {
    return sample_rate_hz > 0.0 ? static_cast<double>(x.size()) / sample_rate_hz : 0.0;
  }
};

/// Synthesize u*s(t) + e(t). Deterministic for a fixed seed; the RNG
/// substream layout is documented in rng.hpp (SourceWaveform for s,
/// ChannelNoise/0 and /1 for the x and y noise components).
MultiChannelRecord synth_plane_wave(const SourceSpec& source, const NoiseSpec& noise,
                                    double duration_s, double sample_rate_hz,
                                    std::uint64_t seed);

/// Superimpose a second noiseless plane wave on a copy of the record.
/// The interferer waveform draws from its own seed's substreams.
MultiChannelRecord add_interferer(const MultiChannelRecord& record,
                                  const SourceSpec& interferer, std::uint64_t seed);

}  // namespace vsdoa
