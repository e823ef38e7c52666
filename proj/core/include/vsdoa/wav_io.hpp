// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vsdoa/signal_model.hpp"

namespace vsdoa {

/// Sidecar metadata stored next to each recording.
struct RecordingMeta {
  double azimuth_deg = 0.0;
  double sample_rate_hz = 0.0;
  std::uint64_t seed = 0;
  std::string spec_echo;  // free-form echo of the generating spec
};

/// 2-channel 32-bit float WAV. Throws DataError on malformed files or
/// unsupported encodings.
void write_wav(const std::filesystem::path& path, const MultiChannelRecord& record);
MultiChannelRecord read_wav(const std::filesystem::path& path);

/// Sidecar JSON: {"azimuth_deg", "sample_rate", "seed", "spec"}.
void write_sidecar(const std::filesystem::path& path, const RecordingMeta& meta);
RecordingMeta read_sidecar(const std::filesystem::path& path);

/// Conventional sidecar path: recording path with a ".json" extension.
std::filesystem::path sidecar_path(const std::filesystem::path& wav_path);

}  // namespace vsdoa
