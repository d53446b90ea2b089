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

#include "warpfb/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "warpfb/errors.hpp"
#include "warpfb/fft.hpp"

namespace warpfb {

TimeSignal::TimeSignal(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (samples_.empty()) throw InvalidInput("TimeSignal: empty sample buffer");
  if (sample_rate_ <= 0) throw InvalidInput("TimeSignal: sample rate must be positive");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw InvalidInput("TimeSignal: non-finite sample at index " + std::to_string(i));
    }
  }
}

TimeSignal TimeSignal::zeros(std::size_t length, int sample_rate) {
  return TimeSignal(std::vector<double>(length, 0.0), sample_rate);
}

double TimeSignal::energy() const {
  return std::inner_product(samples_.begin(), samples_.end(), samples_.begin(), 0.0);
}

double TimeSignal::power() const { return energy() / static_cast<double>(samples_.size()); }

TimeSignal TimeSignal::scaled(double gain) const {
  std::vector<double> out(samples_);
  for (double& v : out) v *= gain;
  return TimeSignal(std::move(out), sample_rate_);
}

TimeSignal TimeSignal::padded_to(std::size_t length) const {
  if (length < samples_.size()) {
    throw InvalidInput("TimeSignal::padded_to: target shorter than signal");
  }
  std::vector<double> out(samples_);
  out.resize(length, 0.0);
  return TimeSignal(std::move(out), sample_rate_);
}

TimeSignal TimeSignal::truncated_to(std::size_t length) const {
  if (length == 0 || length > samples_.size()) {
    throw InvalidInput("TimeSignal::truncated_to: invalid target length");
  }
  return TimeSignal(std::vector<double>(samples_.begin(), samples_.begin() + length),
                    sample_rate_);
}

double Spectrum::energy() const {
  double e = 0.0;
  for (const Complex& c : bins) e += std::norm(c);
  return e;
}

Spectrum dft_forward(const TimeSignal& signal) {
  const std::size_t n = signal.size();
  std::vector<Complex> in(signal.samples().begin(), signal.samples().end());
  Spectrum out;
  out.bins = fft::forward(in);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Complex& c : out.bins) c *= scale;
  out.resolution = static_cast<double>(signal.sample_rate()) / static_cast<double>(n);
  return out;
}

TimeSignal dft_inverse(const Spectrum& spectrum, int sample_rate) {
  if (spectrum.bins.empty()) throw InvalidInput("dft_inverse: empty spectrum");
  const std::size_t n = spectrum.size();
  auto time = fft::backward(spectrum.bins);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = time[i].real() * scale;
  return TimeSignal(std::move(out), sample_rate);
}

std::vector<double> hann_window(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(length));
    w[i] = s * s;
  }
  return w;
}

std::vector<double> rectangular_window(std::size_t length) {
  return std::vector<double>(length, 1.0);
}

std::vector<double> make_window(WindowKind kind, std::size_t length) {
  switch (kind) {
    case WindowKind::hann: return hann_window(length);
    case WindowKind::rectangular: return rectangular_window(length);
  }
  throw ConfigurationError("unknown window kind");
}

WindowKind window_kind_from_string(const std::string& name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "rectangular" || name == "rect") return WindowKind::rectangular;
  throw ConfigurationError("unknown window kind '" + name + "'");
}

std::string to_string(WindowKind kind) {
  return kind == WindowKind::hann ? "hann" : "rectangular";
}

MixResult mix_at_snr(const TimeSignal& clean, const TimeSignal& noise, double snr_db) {
  if (clean.size() != noise.size()) throw InvalidInput("mix_at_snr: length mismatch");
  if (clean.sample_rate() != noise.sample_rate()) {
    throw InvalidInput("mix_at_snr: sample rate mismatch");
  }
  if (!std::isfinite(snr_db)) throw InvalidInput("mix_at_snr: non-finite SNR");
  const double p_clean = clean.power();
  const double p_noise = noise.power();
  if (p_clean <= 0.0) throw DegenerateInput("mix_at_snr: clean signal has zero energy");
  if (p_noise <= 0.0) throw DegenerateInput("mix_at_snr: noise signal has zero energy");

  const double gain = std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
  TimeSignal scaled = noise.scaled(gain);
  std::vector<double> mix(clean.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = clean[i] + scaled[i];
  return MixResult{TimeSignal(std::move(mix), clean.sample_rate()), std::move(scaled), gain};
}

double snr_db(const TimeSignal& signal, const TimeSignal& noise) {
  return 10.0 * std::log10(signal.power() / noise.power());
}

}  // namespace warpfb
