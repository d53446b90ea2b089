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

#include "warpfb/stft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "warpfb/errors.hpp"
#include "warpfb/fft.hpp"

namespace warpfb {
namespace {

constexpr double kSingularTolerance = 1e-12;

double max_square(const std::vector<double>& w) {
  double m = 0.0;
  for (double v : w) m = std::max(m, v * v);
  return m;
}

}  // namespace

StftParams StftParams::hann(std::size_t fft_size, std::size_t hop) {
  return StftParams{hann_window(fft_size), hop, fft_size};
}

std::size_t StftParams::num_frames(std::size_t signal_length) const {
  return (signal_length + hop - 1) / hop;
}

std::size_t StftParams::grid_offset(std::size_t signal_length) const {
  const std::size_t frames = num_frames(signal_length);
  if (frames == 0) return 0;
  return (signal_length - (frames - 1) * hop) / 2;
}

void StftParams::validate() const {
  if (window.empty()) throw ConfigurationError("STFT: empty window");
  if (hop < 1) throw ConfigurationError("STFT: hop must be >= 1");
  if (hop > window.size()) {
    throw ConfigurationError("STFT: hop " + std::to_string(hop) +
                             " exceeds window length " + std::to_string(window.size()));
  }
  if (fft_size < window.size()) {
    throw ConfigurationError("STFT: window length " + std::to_string(window.size()) +
                             " exceeds fft_size " + std::to_string(fft_size));
  }
  for (double v : window) {
    if (!std::isfinite(v)) throw ConfigurationError("STFT: non-finite window value");
  }
  const double floor = kSingularTolerance * max_square(window);
  for (std::size_t r = 0; r < hop; ++r) {
    double s = 0.0;
    for (std::size_t l = r; l < window.size(); l += hop) s += window[l] * window[l];
    if (!(s > floor)) {
      throw NonInvertibleFrame("STFT: window/hop pair leaves sample phase " +
                               std::to_string(r) + " uncovered");
    }
  }
}

std::vector<double> stft_frame_operator(const StftParams& params, std::size_t length) {
  const std::size_t lw = params.window_length();
  const std::size_t pad = lw / 2;
  const std::size_t frames = params.num_frames(length);
  const std::size_t offset = params.grid_offset(length);
  std::vector<double> diag(length, 0.0);
  for (std::size_t k = 0; k < frames; ++k) {
    const std::size_t start = offset + k * params.hop;  // in padded coordinates
    for (std::size_t l = 0; l < lw; ++l) {
      const std::size_t p = start + l;
      if (p < pad || p - pad >= length) continue;
      diag[p - pad] += params.window[l] * params.window[l];
    }
  }
  return diag;
}

TfCoefficients stft_analyze(const TimeSignal& signal, const StftParams& params) {
  params.validate();
  const std::size_t len = signal.size();
  const std::size_t lw = params.window_length();
  const std::size_t pad = lw / 2;
  const std::size_t bins = params.num_bins();
  const std::size_t frames = params.num_frames(len);
  const auto x = signal.samples();

  TfCoefficients out;
  out.domain = TfDomain::stft;
  out.signal_length = len;
  out.sample_rate = signal.sample_rate();
  out.hops.assign(bins, params.hop);
  out.center_hz.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out.center_hz[b] = static_cast<double>(b) * signal.sample_rate() /
                       static_cast<double>(params.fft_size);
  }
  out.data.assign(bins, std::vector<Complex>(frames));

  const std::size_t offset = params.grid_offset(len);
  std::vector<double> frame(params.fft_size);
  for (std::size_t k = 0; k < frames; ++k) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const std::size_t start = offset + k * params.hop;
    for (std::size_t l = 0; l < lw; ++l) {
      const std::size_t p = start + l;
      if (p < pad || p - pad >= len) continue;
      frame[l] = params.window[l] * x[p - pad];
    }
    const auto spec = fft::forward_real(frame);
    for (std::size_t b = 0; b < bins; ++b) out.data[b][k] = spec[b];
  }
  return out;
}

TimeSignal stft_synthesize(const TfCoefficients& coeffs, const StftParams& params,
                           std::size_t length) {
  params.validate();
  const std::size_t lw = params.window_length();
  const std::size_t pad = lw / 2;
  const std::size_t bins = params.num_bins();
  const std::size_t frames = params.num_frames(length);
  if (coeffs.domain != TfDomain::stft || coeffs.num_channels() != bins) {
    throw InvalidInput("stft_synthesize: coefficients do not match STFT parameters");
  }
  for (const auto& ch : coeffs.data) {
    if (ch.size() != frames) {
      throw InvalidInput("stft_synthesize: frame count does not match requested length");
    }
  }

  const auto diag = stft_frame_operator(params, length);
  const double floor = kSingularTolerance * max_square(params.window);
  for (std::size_t l = 0; l < length; ++l) {
    if (!(diag[l] > floor)) {
      throw NonInvertibleFrame("stft_synthesize: frame operator vanishes at sample " +
                               std::to_string(l));
    }
  }

  std::vector<double> out(length, 0.0);
  std::vector<Complex> half(bins);
  const double inv_n = 1.0 / static_cast<double>(params.fft_size);
  const std::size_t offset = params.grid_offset(length);
  for (std::size_t k = 0; k < frames; ++k) {
    for (std::size_t b = 0; b < bins; ++b) half[b] = coeffs.data[b][k];
    const auto frame = fft::backward_real(half, params.fft_size);
    const std::size_t start = offset + k * params.hop;
    for (std::size_t l = 0; l < lw; ++l) {
      const std::size_t p = start + l;
      if (p < pad || p - pad >= length) continue;
      out[p - pad] += params.window[l] * frame[l] * inv_n;
    }
  }
  for (std::size_t l = 0; l < length; ++l) out[l] /= diag[l];
  return TimeSignal(std::move(out), coeffs.sample_rate);
}

}  // namespace warpfb
