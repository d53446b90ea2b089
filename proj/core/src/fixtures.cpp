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

#include "warpfb/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <system_error>

#include "warpfb/errors.hpp"
#include "warpfb/fft.hpp"
#include "warpfb/wav.hpp"

namespace warpfb {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTargetRms = 0.05;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

TimeSignal normalized(std::vector<double> x, int sample_rate) {
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double rms = std::sqrt(energy / static_cast<double>(x.size()));
  if (rms > 0.0) {
    for (double& v : x) v *= kTargetRms / rms;
  }
  return TimeSignal(std::move(x), sample_rate);
}

struct Vowel {
  double formant[3];
  double bandwidth[3];
  double gain;
};

Vowel draw_vowel(FixtureRng& rng) {
  Vowel v{};
  v.formant[0] = rng.uniform(300.0, 850.0);
  v.formant[1] = rng.uniform(900.0, 2300.0);
  v.formant[2] = rng.uniform(2400.0, 3300.0);
  v.bandwidth[0] = 80.0;
  v.bandwidth[1] = 120.0;
  v.bandwidth[2] = 180.0;
  v.gain = rng.uniform(0.4, 1.0);
  return v;
}

// Spectral envelope at f: a -6 dB/octave tilt times three resonances.
double envelope(const Vowel& v, double f) {
  double peaks = 0.02;
  const double weights[3] = {1.0, 0.6, 0.3};
  for (int i = 0; i < 3; ++i) {
    const double d = (f - v.formant[i]) / v.bandwidth[i];
    peaks += weights[i] / (1.0 + d * d);
  }
  return peaks / (1.0 + f / 300.0);
}

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::white: return "white";
    case NoiseKind::pink: return "pink";
    case NoiseKind::babble: return "babble";
  }
  return "unknown";
}

std::uint64_t FixtureRng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return splitmix64(state_);
}

double FixtureRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double FixtureRng::normal() {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

TimeSignal speech_like(FixtureRng& rng, int sample_rate, std::size_t length, double lead_in_s) {
  if (length == 0) throw InvalidInput("speech_like: empty length");
  const double fs = static_cast<double>(sample_rate);
  const double nyquist = fs / 2.0;
  const double f0_base = rng.uniform(90.0, 270.0);
  const double glide_rate = rng.uniform(0.3, 1.0);
  const double glide_phase = rng.uniform(0.0, kTwoPi);
  const double syllable_rate = rng.uniform(2.0, 8.0);
  const double duration = static_cast<double>(length) / fs;

  const std::size_t num_syllables =
      static_cast<std::size_t>(std::ceil(syllable_rate * duration)) + 1;
  std::vector<Vowel> vowels(num_syllables);
  for (auto& v : vowels) v = draw_vowel(rng);

  const double f_top = std::min(7000.0, 0.95 * nyquist);
  const auto max_harmonics = static_cast<std::size_t>(f_top / (f0_base * 0.9));
  std::vector<double> phase(max_harmonics + 1, 0.0);
  for (auto& p : phase) p = rng.uniform(0.0, kTwoPi);

  const auto lead = static_cast<std::size_t>(std::max(0.0, lead_in_s) * fs);
  std::vector<double> out(length, 0.0);
  for (std::size_t n = lead; n < length; ++n) {
    const double t = static_cast<double>(n - lead) / fs;
    // The glide keeps f0 within 80-300 Hz for any base in [90, 270].
    const double f0 = f0_base * (1.0 + 0.1 * std::sin(kTwoPi * glide_rate * t + glide_phase));
    const double syl_pos = syllable_rate * t;
    const auto syl = std::min(static_cast<std::size_t>(syl_pos), num_syllables - 1);
    const Vowel& vowel = vowels[syl];
    // Zero at every syllable boundary so vowel switches are click-free.
    const double am = 0.5 * (1.0 - std::cos(kTwoPi * syl_pos));

    double sample = 0.0;
    for (std::size_t h = 1; h <= max_harmonics; ++h) {
      const double fh = f0 * static_cast<double>(h);
      phase[h] += kTwoPi * fh / fs;
      if (phase[h] > kTwoPi) phase[h] -= kTwoPi;
      if (fh >= f_top) continue;
      sample += envelope(vowel, fh) * std::sin(phase[h]);
    }
    out[n] = vowel.gain * am * sample;
  }
  return normalized(std::move(out), sample_rate);
}

TimeSignal make_noise(NoiseKind kind, FixtureRng& rng, int sample_rate, std::size_t length) {
  if (length == 0) throw InvalidInput("make_noise: empty length");
  std::vector<double> x(length);
  switch (kind) {
    case NoiseKind::white:
      for (double& v : x) v = rng.normal();
      break;
    case NoiseKind::pink: {
      // Shape white Gaussian bins by 1/sqrt(f) so power falls as 1/f.
      const std::size_t bins = length / 2 + 1;
      std::vector<std::complex<double>> spec(bins);
      for (std::size_t k = 1; k < bins; ++k) {
        const double g = 1.0 / std::sqrt(static_cast<double>(k));
        spec[k] = {g * rng.normal(), g * rng.normal()};
      }
      if (length % 2 == 0) spec[bins - 1] = {spec[bins - 1].real(), 0.0};
      x = fft::backward_real(spec, length);
      break;
    }
    case NoiseKind::babble: {
      constexpr int kTalkers = 6;
      for (int i = 0; i < kTalkers; ++i) {
        FixtureRng talker(rng.next());
        const TimeSignal s = speech_like(talker, sample_rate, length, 0.0);
        for (std::size_t n = 0; n < length; ++n) x[n] += s[n];
      }
      break;
    }
  }
  return normalized(std::move(x), sample_rate);
}

DatasetManifest synth_fixtures(const FixtureOptions& options, const std::filesystem::path& out_dir) {
  if (options.count < 1) throw InvalidInput("synth_fixtures: count must be at least 1");
  if (options.sample_rate <= 0) throw InvalidInput("synth_fixtures: sample rate must be positive");
  if (!(options.duration_s > 0.0)) throw InvalidInput("synth_fixtures: duration must be positive");
  if (options.snrs.empty()) throw InvalidInput("synth_fixtures: no SNR values");
  const auto length = static_cast<std::size_t>(
      std::llround(options.duration_s * static_cast<double>(options.sample_rate)));
  if (static_cast<double>(length) <= options.lead_in_s * options.sample_rate) {
    throw InvalidInput("synth_fixtures: duration does not exceed the lead-in");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("synth_fixtures: cannot create " + out_dir.string());
  }

  DatasetManifest manifest;
  manifest.sample_rate = options.sample_rate;
  manifest.base_dir = out_dir;
  for (std::size_t i = 0; i < options.count; ++i) {
    const std::uint64_t entry_seed = splitmix64(options.seed ^ splitmix64(i));
    FixtureRng rng(entry_seed);
    const TimeSignal clean = speech_like(rng, options.sample_rate, length, options.lead_in_s);
    const auto kind = static_cast<NoiseKind>(i % 3);
    const TimeSignal noise = make_noise(kind, rng, options.sample_rate, length);

    char name[32];
    std::snprintf(name, sizeof(name), "%03zu", i);
    ManifestEntry entry;
    entry.clean_path = std::string("clean_") + name + ".wav";
    entry.noise_path = std::string("noise_") + name + "_" + to_string(kind) + ".wav";
    entry.snr_db = options.snrs[i % options.snrs.size()];
    entry.seed = entry_seed;
    write_wav(out_dir / entry.clean_path, clean);
    write_wav(out_dir / entry.noise_path, noise);
    manifest.entries.push_back(std::move(entry));
  }
  save_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace warpfb
