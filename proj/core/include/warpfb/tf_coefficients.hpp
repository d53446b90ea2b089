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

namespace warpfb {

enum class TfDomain { stft, wfbf };

std::string to_string(TfDomain domain);

/// Coefficient matrix of a time-frequency transform, stored per channel so
/// that multirate (warped) layouts fit alongside uniform STFT grids.
///
/// data[c][k] is the coefficient of channel c at frame k. `hops` holds the
/// per-channel time step in samples (the STFT hop or a WFBF decimation); the
/// frame rate of channel c is sample_rate / hops[c].
struct TfCoefficients {
  TfDomain domain = TfDomain::stft;
  std::vector<std::vector<Complex>> data;
  std::vector<std::size_t> hops;
  std::vector<double> center_hz;
  std::size_t signal_length = 0;
  int sample_rate = 0;

  std::size_t num_channels() const { return data.size(); }
  std::size_t num_frames(std::size_t channel) const { return data[channel].size(); }
  std::size_t max_frames() const;
  std::size_t total_size() const;
  double channel_rate(std::size_t channel) const;

  /// Same domain, signal length, rate, hops and frame counts.
  bool same_layout(const TfCoefficients& other) const;

  /// Copy with identical layout and all coefficients set to zero.
  TfCoefficients zeros_like() const;

  double energy() const;
};

/// Throws InvalidInput naming `what` when the layouts differ.
void require_same_layout(const TfCoefficients& a, const TfCoefficients& b,
                         const char* what);

TfCoefficients operator+(const TfCoefficients& a, const TfCoefficients& b);
TfCoefficients operator*(double gain, const TfCoefficients& a);

}  // namespace warpfb
