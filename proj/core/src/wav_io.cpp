// SPDX-License-Identifier: Apache-2.0
#include "vsdoa/wav_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "vsdoa/errors.hpp"

namespace vsdoa {

namespace {

constexpr std::uint16_t kFormatIeeeFloat = 3;

void put_u32(std::ofstream& out, std::uint32_t v) {
  std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                        static_cast<char>((v >> 16) & 0xFF),
                        static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

void put_u16(std::ofstream& out, std::uint16_t v) {
  std::array<char, 2> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
  out.write(b.data(), 2);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

}  // namespace

void write_wav(const std::filesystem::path& path, const MultiChannelRecord& record) {
  if (record.x.size() != record.y.size())
    throw DataError("record channels have unequal lengths");
  if (!(record.sample_rate_hz > 0.0)) throw DataError("record sample rate must be positive");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path.string());

  const std::uint32_t n_frames = static_cast<std::uint32_t>(record.size());
  const std::uint32_t data_bytes = n_frames * 2 * sizeof(float);
  const auto rate = static_cast<std::uint32_t>(std::llround(record.sample_rate_hz));

  out.write("RIFF", 4);
  put_u32(out, 4 + (8 + 16) + (8 + 4) + (8 + data_bytes));
  out.write("WAVE", 4);

  out.write("fmt ", 4);
  put_u32(out, 16);
  put_u16(out, kFormatIeeeFloat);
  put_u16(out, 2);  // channels
  put_u32(out, rate);
  put_u32(out, rate * 2 * sizeof(float));  // byte rate
  put_u16(out, 2 * sizeof(float));         // block align
  put_u16(out, 32);                        // bits per sample

  // fact chunk is required for non-PCM formats.
  out.write("fact", 4);
  put_u32(out, 4);
  put_u32(out, n_frames);

  out.write("data", 4);
  put_u32(out, data_bytes);
  std::vector<float> frame(2);
  for (std::uint32_t i = 0; i < n_frames; ++i) {
    frame[0] = static_cast<float>(record.x[i]);
    frame[1] = static_cast<float>(record.y[i]);
    out.write(reinterpret_cast<const char*>(frame.data()), 2 * sizeof(float));
  }
  if (!out) throw DataError("short write: " + path.string());
}

MultiChannelRecord read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAVE file: " + path.string());

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_bytes = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t size = get_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw DataError("truncated chunk in " + path.string());
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) throw DataError("malformed fmt chunk in " + path.string());
      format = get_u16(bytes.data() + body);
      channels = get_u16(bytes.data() + body + 2);
      rate = get_u32(bytes.data() + body + 4);
      bits = get_u16(bytes.data() + body + 14);
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = bytes.data() + body;
      data_bytes = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (format != kFormatIeeeFloat || bits != 32)
    throw DataError("unsupported WAV encoding (need 32-bit float): " + path.string());
  if (channels != 2) throw DataError("expected 2 channels: " + path.string());
  if (data == nullptr) throw DataError("missing data chunk: " + path.string());

  const std::size_t n_frames = data_bytes / (2 * sizeof(float));
  MultiChannelRecord record;
  record.sample_rate_hz = static_cast<double>(rate);
  record.x.resize(n_frames);
  record.y.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    float fx, fy;
    std::memcpy(&fx, data + (2 * i) * sizeof(float), sizeof(float));
    std::memcpy(&fy, data + (2 * i + 1) * sizeof(float), sizeof(float));
    record.x[i] = fx;
    record.y[i] = fy;
  }
  return record;
}

void write_sidecar(const std::filesystem::path& path, const RecordingMeta& meta) {
  nlohmann::json j;
  j["azimuth_deg"] = meta.azimuth_deg;
  j["sample_rate"] = meta.sample_rate_hz;
  j["seed"] = meta.seed;
  j["spec"] = meta.spec_echo;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

RecordingMeta read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed sidecar " + path.string() + ": " + e.what());
  }
  RecordingMeta meta;
  meta.azimuth_deg = j.at("azimuth_deg").get<double>();
  meta.sample_rate_hz = j.at("sample_rate").get<double>();
  meta.seed = j.at("seed").get<std::uint64_t>();
  meta.spec_echo = j.value("spec", "");
  return meta;
}

std::filesystem::path sidecar_path(const std::filesystem::path& wav_path) {
  std::filesystem::path p = wav_path;
  p.replace_extension(".json");
  return p;
}

}  // namespace vsdoa
