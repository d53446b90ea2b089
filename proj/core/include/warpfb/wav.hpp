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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "warpfb/signal.hpp"

namespace warpfb {

enum class WavEncoding { pcm16, float32 };

/// Mono RIFF/WAVE encoder. PCM16 samples are clipped to [-1, 1].
std::vector<std::uint8_t> encode_wav(const TimeSignal& signal, WavEncoding encoding);

/// Accepts mono 16-bit PCM and 32-bit IEEE float, including the
/// WAVE_FORMAT_EXTENSIBLE wrapper of either. PCM16 maps to s / 32768.
TimeSignal decode_wav(std::span<const std::uint8_t> bytes);

void write_wav(const std::filesystem::path& path, const TimeSignal& signal,
               WavEncoding encoding = WavEncoding::float32);
TimeSignal read_wav(const std::filesystem::path& path);

struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::size_t frames = 0;
};

/// Parses only the header chunks.
WavInfo read_wav_info(const std::filesystem::path& path);

}  // namespace warpfb
