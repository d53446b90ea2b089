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
#include <vector>

#include "warpfb/signal.hpp"
#include "warpfb/tf_coefficients.hpp"

namespace warpfb {

/// Uniform STFT configuration. Frames are windowed with `window`, zero-padded
/// to `fft_size` and advanced by `hop` samples; only the fft_size/2 + 1
/// non-negative frequency bins are kept.
struct StftParams {
  std::vector<double> window;
  std::size_t hop = 0;
  std::size_t fft_size = 0;

  /// Periodic Hann window of length fft_size.
  static StftParams hann(std::size_t fft_size, std::size_t hop);

  std::size_t window_length() const { return window.size(); }
  std::size_t num_bins() const { return fft_size / 2 + 1; }
  std::size_t num_frames(std::size_t signal_length) const;
  /// The signal is zero-padded by half a window on both sides. The K frames
  /// span (K - 1) * hop + window_length samples of that padded buffer, and
  /// frame k starts at grid_offset + k * hop so the slack is split evenly
  /// between both ends. Without the split, the last samples would only be
  /// seen by the decaying tail of one window.
  std::size_t grid_offset(std::size_t signal_length) const;

  /// Throws ConfigurationError on structural problems and NonInvertibleFrame
  /// when sum_k |g[l - hop k]|^2 vanishes for some l.
  void validate() const;
};

/// Diagonal of the frame operator sum_k g[l - hop k]^2 over the original
/// signal positions l = 0..length-1, including boundary padding effects.
std::vector<double> stft_frame_operator(const StftParams& params, std::size_t length);

/// Analysis with half-window zero padding on both ends; K = ceil(len / hop)
/// frames, frame k centred at sample k * hop.
TfCoefficients stft_analyze(const TimeSignal& signal, const StftParams& params);

/// Canonical-dual synthesis: overlap-add of g * ifft(frame), divided by the
/// frame-operator diagonal. Output has `length` samples.
TimeSignal stft_synthesize(const TfCoefficients& coeffs, const StftParams& params,
                           std::size_t length);

}  // namespace warpfb
