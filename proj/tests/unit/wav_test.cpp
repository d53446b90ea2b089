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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "warpfb/errors.hpp"
#include "warpfb/wav.hpp"

namespace warpfb {
namespace {

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v & 0xff));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

/// Hand-assembled WAVE_FORMAT_EXTENSIBLE file with float32 samples.
std::vector<std::uint8_t> extensible_float(const std::vector<float>& samples, int rate,
                                           std::uint16_t channels = 1) {
  std::vector<std::uint8_t> fmt;
  put_u16(fmt, 0xFFFE);
  put_u16(fmt, channels);
  put_u32(fmt, static_cast<std::uint32_t>(rate));
  put_u32(fmt, static_cast<std::uint32_t>(rate) * 4u * channels);
  put_u16(fmt, static_cast<std::uint16_t>(4 * channels));
  put_u16(fmt, 32);
  put_u16(fmt, 22);
  put_u16(fmt, 32);
  put_u32(fmt, channels == 1 ? 0x4u : 0x3u);
  put_u16(fmt, 3);  // IEEE float subformat GUID prefix
  const std::uint8_t guid_tail[14] = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                      0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};
  fmt.insert(fmt.end(), guid_tail, guid_tail + 14);

  std::vector<std::uint8_t> out;
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(4 + 8 + fmt.size() + 8 + 4 * samples.size()));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, static_cast<std::uint32_t>(fmt.size()));
  out.insert(out.end(), fmt.begin(), fmt.end());
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(4 * samples.size()));
  for (float s : samples) {
    std::uint32_t bits;
    std::memcpy(&bits, &s, 4);
    put_u32(out, bits);
  }
  return out;
}

TEST(Wav, Float32RoundTripIsExactForFloatValues) {
  std::vector<double> x = {0.0, 0.5, -0.25, 1.0, -1.0, 0.125};
  const TimeSignal sig(x, 22050);
  const TimeSignal back = decode_wav(encode_wav(sig, WavEncoding::float32));
  EXPECT_EQ(back.sample_rate(), 22050);
  EXPECT_EQ(back.data(), x);
}

TEST(Wav, Pcm16RoundTripWithinQuantization) {
  const TimeSignal sig(testing::random_samples(1000, 3, 0.2), 16000);
  const TimeSignal back = decode_wav(encode_wav(sig, WavEncoding::pcm16));
  ASSERT_EQ(back.size(), sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const double clipped = std::clamp(sig[i], -1.0, 32767.0 / 32768.0);
    EXPECT_LE(std::abs(back[i] - clipped), 0.5 / 32768.0);
  }
}

TEST(Wav, Pcm16ClipsOutOfRangeSamples) {
  const TimeSignal back = decode_wav(encode_wav(TimeSignal({3.0, -3.0}, 16000), WavEncoding::pcm16));
  EXPECT_NEAR(back[0], 32767.0 / 32768.0, 1e-12);
  EXPECT_EQ(back[1], -1.0);
}

TEST(Wav, ExtensibleFormatIsRead) {
  const TimeSignal sig = decode_wav(extensible_float({0.5f, -0.75f, 0.0f}, 8000));
  EXPECT_EQ(sig.sample_rate(), 8000);
  EXPECT_EQ(sig.data(), (std::vector<double>{0.5, -0.75, 0.0}));
}

TEST(Wav, MalformedInputIsRejected) {
  EXPECT_THROW(decode_wav(extensible_float({0.1f, 0.2f}, 8000, 2)), InvalidInput);
  const auto good = encode_wav(TimeSignal({0.1, 0.2}, 16000), WavEncoding::float32);
  const std::vector<std::uint8_t> header_only(good.begin(), good.begin() + 20);
  EXPECT_THROW(decode_wav(header_only), InvalidInput);
  std::vector<std::uint8_t> not_riff = good;
  not_riff[0] = 'X';
  EXPECT_THROW(decode_wav(not_riff), InvalidInput);
}

TEST(Wav, FileRoundTripAndInfo) {
  testing::TempDir dir("wav");
  const TimeSignal sig(testing::random_samples(321, 4, 0.1), 16000);
  write_wav(dir / "a.wav", sig, WavEncoding::pcm16);
  const WavInfo info = read_wav_info(dir / "a.wav");
  EXPECT_EQ(info.sample_rate, 16000);
  EXPECT_EQ(info.channels, 1);
  EXPECT_EQ(info.bits_per_sample, 16);
  EXPECT_EQ(info.frames, 321u);
  EXPECT_EQ(read_wav(dir / "a.wav").size(), 321u);
  EXPECT_THROW(read_wav(dir / "missing.wav"), IoError);
}

}  // namespace
}  // namespace warpfb
