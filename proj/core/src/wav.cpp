// Copyright 2026 The warpfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "warpfb/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "warpfb/errors.hpp"

namespace warpfb {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

struct Parsed {
  WavInfo info;
  std::uint16_t format = 0;
  std::size_t data_offset = 0;
  std::size_t data_size = 0;
};

Parsed parse(std::span<const std::uint8_t> bytes, bool need_data) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw InvalidInput("WAV: not a RIFF/WAVE stream");
  }
  Parsed p;
  bool have_fmt = false;
  bool have_data = false;
  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const std::uint32_t size = get_u32(bytes, at + 4);
    const std::size_t body = at + 8;
    if (tag_is(bytes, at, "fmt ")) {
      if (size < 16 || body + size > bytes.size()) throw InvalidInput("WAV: truncated fmt chunk");
      p.format = get_u16(bytes, body);
      p.info.channels = get_u16(bytes, body + 2);
      p.info.sample_rate = static_cast<int>(get_u32(bytes, body + 4));
      p.info.bits_per_sample = get_u16(bytes, body + 14);
      if (p.format == kFormatExtensible) {
        if (size < 40) throw InvalidInput("WAV: truncated extensible fmt chunk");
        p.format = get_u16(bytes, body + 24);
      }
      have_fmt = true;
    } else if (tag_is(bytes, at, "data")) {
      p.data_offset = body;
      p.data_size = std::min<std::size_t>(size, bytes.size() - body);
      have_data = true;
      if (!need_data || have_fmt) break;
    }
    at = body + size + (size & 1u);
  }
  if (!have_fmt) throw InvalidInput("WAV: missing fmt chunk");
  if (!have_data) throw InvalidInput("WAV: missing data chunk");
  if (p.info.channels != 1) {
    throw InvalidInput("WAV: only mono files are supported (got " +
                       std::to_string(p.info.channels) + " channels)");
  }
  const bool pcm16 = p.format == kFormatPcm && p.info.bits_per_sample == 16;
  const bool f32 = p.format == kFormatFloat && p.info.bits_per_sample == 32;
  if (!pcm16 && !f32) {
    throw InvalidInput("WAV: unsupported encoding (format " + std::to_string(p.format) + ", " +
                       std::to_string(p.info.bits_per_sample) + " bits)");
  }
  p.info.frames = p.data_size / static_cast<std::size_t>(p.info.bits_per_sample / 8);
  return p;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::vector<std::uint8_t> encode_wav(const TimeSignal& signal, WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::pcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t block = bits / 8;
  const std::uint32_t data_size = static_cast<std::uint32_t>(signal.size() * block);
  const std::uint32_t rate = static_cast<std::uint32_t>(signal.sample_rate());

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, pcm ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * block);
  put_u16(out, static_cast<std::uint16_t>(block));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_size);
  for (double v : signal.samples()) {
    if (pcm) {
      const double scaled = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
      const auto s = static_cast<std::int16_t>(scaled);
      put_u16(out, static_cast<std::uint16_t>(s));
    } else {
      const float f = static_cast<float>(v);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof(u));
      put_u32(out, u);
    }
  }
  return out;
}

TimeSignal decode_wav(std::span<const std::uint8_t> bytes) {
  const Parsed p = parse(bytes, true);
  if (p.info.frames == 0) throw InvalidInput("WAV: no samples");
  std::vector<double> samples(p.info.frames);
  for (std::size_t i = 0; i < p.info.frames; ++i) {
    if (p.format == kFormatPcm) {
      const auto s = static_cast<std::int16_t>(get_u16(bytes, p.data_offset + 2 * i));
      samples[i] = static_cast<double>(s) / 32768.0;
    } else {
      const std::uint32_t u = get_u32(bytes, p.data_offset + 4 * i);
      float f;
      std::memcpy(&f, &u, sizeof(f));
      samples[i] = static_cast<double>(f);
    }
  }
  return TimeSignal(std::move(samples), p.info.sample_rate);
}

void write_wav(const std::filesystem::path& path, const TimeSignal& signal, WavEncoding encoding) {
  const auto bytes = encode_wav(signal, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

TimeSignal read_wav(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  try {
    return decode_wav(bytes);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

WavInfo read_wav_info(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  try {
    return parse(bytes, false).info;
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

}  // namespace warpfb
