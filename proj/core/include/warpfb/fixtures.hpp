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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "warpfb/eval.hpp"
#include "warpfb/signal.hpp"

namespace warpfb {

enum class NoiseKind { white, pink, babble };
std::string to_string(NoiseKind kind);

struct FixtureOptions {
  std::size_t count = 20;
  std::uint64_t seed = 42;
  int sample_rate = 16000;
  double duration_s = 2.0;
  /// Entry i is mixed at snrs[i % snrs.size()].
  std::vector<double> snrs = {0.0};
  /// Silent lead-in before the first syllable. Noise-tracking baselines
  /// estimate their noise floor here.
  double lead_in_s = 0.2;
};

/// Small deterministic generator. Only raw 64-bit draws are used so the
/// output does not depend on the standard library's distribution code.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::uint64_t state_;
};

/// Harmonic speech stand-in: voiced source with a gliding fundamental,
/// vowel-like formant envelope redrawn per syllable, and syllabic amplitude
/// modulation. RMS is normalized to 0.05.
TimeSignal speech_like(FixtureRng& rng, int sample_rate, std::size_t length, double lead_in_s);

TimeSignal make_noise(NoiseKind kind, FixtureRng& rng, int sample_rate, std::size_t length);

/// Writes clean_NNN.wav, noise_NNN.wav and manifest.json into `out_dir`.
/// Identical options produce byte-identical files.
DatasetManifest synth_fixtures(const FixtureOptions& options, const std::filesystem::path& out_dir);

}  // namespace warpfb
