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
#include <span>
#include <string>
#include <vector>

#include "warpfb/masking.hpp"
#include "warpfb/signal.hpp"
#include "warpfb/stft.hpp"
#include "warpfb/tf_coefficients.hpp"
#include "warpfb/warping.hpp"

namespace warpfb {

struct WelchConfig {
  std::size_t segment_length = 512;
  double overlap = 0.5;
  WindowKind window = WindowKind::hann;

  std::size_t hop() const;
  void validate() const;
};

struct DesignConfig {
  double lambda = 0.1;
  StftParams stft = StftParams::hann(512, 256);
  WelchConfig welch;
  std::size_t num_channels = 64;

  void validate() const;
};

/// One-sided Welch PSD of the oracle masking error, in power per Hz.
struct ErrorPsd {
  std::vector<double> sigma;
  double bin_hz = 0.0;
  std::size_t num_segments = 0;
  std::string normalization;

  double frequency_hz(std::size_t bin) const { return bin_hz * static_cast<double>(bin); }
  /// sum sigma * bin_hz; the signal variance for a zero-mean input.
  double total_power() const;
};

/// eps = G_PSM X - S element-wise, with the truncated oracle PSM.
TfCoefficients oracle_error(const TfCoefficients& clean, const TfCoefficients& noisy);

/// STFT-domain oracle error of one utterance brought back to the time domain.
TimeSignal oracle_error_signal(const TimeSignal& clean, const TimeSignal& noisy,
                               const StftParams& stft);

/// Averaged modified periodogram over overlapping windowed segments,
/// scaled by 1 / (fs sum w^2) and doubled on interior bins, so unit-variance
/// white noise has expected level 2 / fs on every interior bin.
ErrorPsd welch_psd(const TimeSignal& error_signal, const WelchConfig& cfg);

/// cumsum(sigma_bar + lambda) with sigma_bar = sigma / mean(sigma), taken from
/// low to high frequency. sigma_bar is 0 when sigma has no mass.
std::vector<double> warping_cumsum(std::span<const double> sigma, double lambda);

/// Tabulated warping with breakpoints (f_i, cumsum_i). The filterbank builder
/// rescales it to [0, num_channels].
WarpingFunction design_warping(const ErrorPsd& sigma, double lambda, std::size_t num_channels);

/// W[w] = (mean |eps|^2 - |mean eps|^2)^(-1/2), statistics pooled over every
/// frame of every matrix, capped at kMaxWeight.
FrequencyWeights compute_weights(std::span<const TfCoefficients> errors);

inline constexpr double kMaxWeight = 1e8;

struct BandVariance {
  std::vector<double> center_hz;
  std::vector<double> variance;

  /// max / min over channels; infinite when some channel has zero variance.
  double max_min_ratio() const;
};

/// Pooled per-channel variance of the error, mean |eps|^2 - |mean eps|^2.
BandVariance band_error_variance(std::span<const TfCoefficients> errors);

struct MixturePair {
  TimeSignal clean;
  TimeSignal noisy;
};

struct DesignResult {
  ErrorPsd psd;
  WarpingFunction warping;
};

/// Collects the STFT oracle error of every pair, concatenates the
/// time-domain errors, estimates their PSD and designs the warping.
DesignResult design_from_pairs(std::span<const MixturePair> pairs, const DesignConfig& cfg,
                               std::size_t threads = 1);

}  // namespace warpfb
