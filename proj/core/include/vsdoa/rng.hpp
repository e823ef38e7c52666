// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace vsdoa::rng {

/// SplitMix64 finalizer. Fully specified, used to derive substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Roles for the documented stream-splitting rule. Every stochastic
/// component of a synthesis draws from its own substream so that a
/// test can regenerate any single component independently.
enum class StreamRole : std::uint64_t {
  SourceWaveform = 0,  // the scalar source signal s(t)
  ChannelNoise = 1,    // additive noise, one substream per channel
};

/// Stream tag = (role << 8) | channel. Channel is 0 for the x velocity
/// channel, 1 for y, and 0 for channel-less roles.
constexpr std::uint64_t stream_tag(StreamRole role, std::uint64_t channel = 0) {
  return (static_cast<std::uint64_t>(role) << 8) | channel;
}

/// Substream seed derivation: mix the master seed with the mixed tag.
/// Identical (master, tag) pairs always yield identical streams.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

/// One seeded substream. Backed by std::mt19937_64 (bit-reproducible per
/// the standard) with explicit Box-Muller Gaussians, so the generated
/// sequences do not depend on the standard library's distribution
/// implementations.
class Substream {
 public:
  Substream(std::uint64_t master, std::uint64_t tag) : engine_(substream_seed(master, tag)) {}
  Substream(std::uint64_t master, StreamRole role, std::uint64_t channel = 0)
      : Substream(master, stream_tag(role, channel)) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the paired value is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));  // 1-u1 in (0,1]
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Circularly-symmetric complex normal with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace vsdoa::rng
