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
#include <string>
#include <vector>

#include "warpfb/signal.hpp"
#include "warpfb/tf_coefficients.hpp"
#include "warpfb/warping.hpp"

namespace warpfb {

/// One bandpass channel of a warped filterbank frame.
///
/// The frequency response is stored on its compact support only. Bins are
/// signed indices on the full DFT axis of length signal_length, so the DC
/// channel reaches into negative bins and the Nyquist channel past L/2; both
/// are real symmetric filters. Interior channels live strictly inside
/// (0, Nyquist).
struct WfbfChannel {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  std::size_t decimation = 1;
  long first_bin = 0;
  long last_bin = -1;
  std::vector<double> response;

  std::size_t support_width() const {
    return static_cast<std::size_t>(last_bin - first_bin + 1);
  }
  /// Zero outside the support.
  double response_at(long bin) const;
};

/// Painless warped filterbank frame over signals of a fixed length.
///
/// Channel c = 0..num_channels covers warped units (c - 1, c + 1); channel 0
/// is the DC channel and channel num_channels the Nyquist channel, so there
/// are num_channels + 1 channels in total.
class FilterbankSpec {
 public:
  /// Assembles a spec from explicit channels, computes the dual responses
  /// and checks the painless condition and frame-operator positivity.
  FilterbankSpec(std::vector<WfbfChannel> channels, std::size_t signal_length,
                 int sample_rate, WarpingFunction warping, std::size_t num_channels,
                 double redundancy);

  const std::vector<WfbfChannel>& channels() const { return channels_; }
  const WfbfChannel& channel(std::size_t c) const { return channels_[c]; }
  const std::vector<double>& dual_response(std::size_t c) const { return duals_[c]; }
  std::size_t channel_count() const { return channels_.size(); }
  std::size_t num_channels() const { return num_channels_; }
  std::size_t signal_length() const { return signal_length_; }
  int sample_rate() const { return sample_rate_; }
  const WarpingFunction& warping() const { return warping_; }
  double redundancy() const { return redundancy_; }

  /// 1 for the DC and Nyquist channels, 2 for interior channels, which stand
  /// for themselves and their negative-frequency mirror.
  double channel_weight(std::size_t c) const;

  /// S(f) = sum_c weight_c / a_c * |g_c(f)|^2 on one-sided bins 0..L/2.
  const std::vector<double>& frame_operator() const { return frame_operator_; }

  std::size_t num_frames(std::size_t c) const {
    return signal_length_ / channels_[c].decimation;
  }
  /// Coefficients per signal sample, counting interior channels twice
  /// (complex) and DC/Nyquist once (real).
  double achieved_redundancy() const;

  double dual_at(std::size_t c, long bin) const;

 private:
  std::vector<WfbfChannel> channels_;
  std::vector<std::vector<double>> duals_;
  std::vector<double> frame_operator_;
  std::size_t signal_length_;
  int sample_rate_;
  WarpingFunction warping_;
  std::size_t num_channels_;
  double redundancy_;
};

/// Prototype on the warped axis: Hann bump cos^2(pi x / 2) on |x| < 1.
double warped_prototype(double x);

/// Phi_STFT(f) = f / b.
WarpingFunction warping_stft(double b);

/// Phi_wavelet(f) = log_c(f) above f_min, C^1 linear continuation below.
WarpingFunction warping_wavelet(double c, double f_min);

/// The warping affinely rescaled to [0, Nyquist] -> [0, num_channels] and
/// extended by odd reflection below 0 and above Nyquist.
class NormalizedWarp {
 public:
  NormalizedWarp(const WarpingFunction& warping, double nyquist_hz, std::size_t num_channels);

  double operator()(double hz) const;
  double inverse(double warped) const;

 private:
  double forward_inside(double hz) const;
  double inverse_inside(double warped) const;

  WarpingFunction warping_;
  double nyquist_;
  double channels_;
  double offset_;
  double scale_;
};

/// Builds a painless filterbank whose channel responses are translates of
/// the prototype in the normalized warped coordinate. Decimations are the
/// largest powers of two that divide signal_length and do not exceed
/// signal_length / (support_width * redundancy).
FilterbankSpec build_filterbank(const WarpingFunction& warping, std::size_t num_channels,
                                std::size_t signal_length, int sample_rate,
                                double redundancy);

TfCoefficients wfbf_analyze(const TimeSignal& signal, const FilterbankSpec& fb);

TimeSignal wfbf_synthesize(const TfCoefficients& coeffs, const FilterbankSpec& fb);

/// Magnitude responses on one-sided DFT bins.
struct ResponseTable {
  std::vector<double> frequency_hz;
  std::vector<std::vector<double>> magnitude;  // [channel][bin]
};

ResponseTable export_frequency_response(const FilterbankSpec& fb);

}  // namespace warpfb
