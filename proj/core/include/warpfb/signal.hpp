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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace warpfb {

using Complex = std::complex<double>;

/// Real-valued mono waveform. Immutable once constructed; the constructor
/// rejects empty buffers, non-finite samples and non-positive sample rates.
class TimeSignal {
 public:
  TimeSignal(std::vector<double> samples, int sample_rate);

  static TimeSignal zeros(std::size_t length, int sample_rate);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& data() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  double energy() const;
  double power() const;

  TimeSignal scaled(double gain) const;
  TimeSignal padded_to(std::size_t length) const;
  TimeSignal truncated_to(std::size_t length) const;

 private:
  std::vector<double> samples_;
  int sample_rate_;
};

/// Complex DFT bins with their spacing in Hz.
struct Spectrum {
  std::vector<Complex> bins;
  double resolution = 0.0;

  std::size_t size() const { return bins.size(); }
  double energy() const;
};

/// Unitary DFT (1/sqrt(L) on both directions), any length.
Spectrum dft_forward(const TimeSignal& signal);

/// Inverse of dft_forward; returns the real part of the unitary inverse.
TimeSignal dft_inverse(const Spectrum& spectrum, int sample_rate);

enum class WindowKind { hann, rectangular };

/// Periodic Hann: w[n] = sin^2(pi n / N).
std::vector<double> hann_window(std::size_t length);
std::vector<double> rectangular_window(std::size_t length);
std::vector<double> make_window(WindowKind kind, std::size_t length);

WindowKind window_kind_from_string(const std::string& name);
std::string to_string(WindowKind kind);

struct MixResult {
  TimeSignal mixture;
  TimeSignal scaled_noise;
  double noise_gain;
};

/// Scales `noise` so that 10 log10(P_clean / P_noise) equals `snr_db`, then
/// adds it to `clean`.
MixResult mix_at_snr(const TimeSignal& clean, const TimeSignal& noise,
                     double snr_db);

/// 10 log10(P_a / P_b).
double snr_db(const TimeSignal& signal, const TimeSignal& noise);

}  // namespace warpfb
