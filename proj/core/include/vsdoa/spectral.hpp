// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsdoa/hermitian2.hpp"
#include "vsdoa/signal_model.hpp"

namespace vsdoa {

enum class Window { Hann, Hamming, Rectangular };

/// Averaged-periodogram configuration. Defaults give exactly 2 Hz bins
/// at the 8192 Hz reference rate: segment 4096, Hann, 50% overlap,
/// one-sided spectrum, density normalization 1/(fs * sum w^2), no
/// detrending.
struct SpectralConfig {
  std::size_t segment_length = 4096;
  double overlap = 0.5;  // fraction in [0, 1)
  Window window = Window::Hann;
};

/// One frequency bin of the estimated cross-spectral matrix
/// [[q, r], [conj(r), s]].
struct CsdBin {
  double freq_hz = 0.0;
  double q = 0.0;
  double s = 0.0;
  cplx r = {0.0, 0.0};

  Herm2 matrix() const { return Herm2{q, s, r}; }
};

/// Ordered bins with strictly increasing frequency; the ordering defines
/// the index set F.
struct CsdSet {
  std::vector<CsdBin> bins;
  double bin_width_hz = 0.0;

  std::size_t size() const { return bins.size(); }
  bool empty() const { return bins.empty(); }
};

/// Welch cross-spectral estimate. Throws InsufficientDataError when the
/// record is shorter than one segment.
CsdSet welch_csd(const MultiChannelRecord& record, const SpectralConfig& config = {});

/// Keep bins with f_lo <= freq <= f_hi (closed endpoints). Throws
/// EmptyBandError when nothing remains, InvalidSpecError when
/// f_lo >= f_hi.
CsdSet select_band(const CsdSet& csd, double f_lo_hz, double f_hi_hz);

/// Debug/cross-implementation serialization:
/// [{"freq": .., "q": .., "s": .., "r_re": .., "r_im": ..}, ...]
std::string to_json(const CsdSet& csd);
CsdSet csd_from_json(const std::string& text);

std::vector<double> window_samples(Window window, std::size_t length);

}  // namespace vsdoa
