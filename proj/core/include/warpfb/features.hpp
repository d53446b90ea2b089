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

#include <Eigen/Dense>

#include "warpfb/tf_coefficients.hpp"

namespace warpfb {

enum class FeatureDomain { stft, mel, wfbf };

std::string to_string(FeatureDomain domain);

/// values[d][k]: feature dimension d at frame k. Every entry is finite.
struct FeatureMatrix {
  std::vector<std::vector<double>> values;
  FeatureDomain domain = FeatureDomain::stft;

  std::size_t dims() const { return values.size(); }
  std::size_t frames() const { return values.empty() ? 0 : values.front().size(); }
};

/// Magnitudes are floored here before taking the log.
inline constexpr double kMagnitudeFloor = 1e-10;

/// ln(max(|c|, floor)) per coefficient. Multirate layouts are put on the
/// frame grid of the fastest channel by holding each channel's most recent
/// frame (frame j of the grid reads channel frame floor(j * K_c / K_max)).
FeatureMatrix log_magnitude(const TfCoefficients& coeffs);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Triangular mel filterbank over STFT bins with area-normalized rows
/// (each row sums to 1) and its Moore-Penrose pseudo-inverse.
class MelTransform {
 public:
  /// f_max < 0 selects the Nyquist frequency.
  MelTransform(std::size_t num_mel, std::size_t num_bins, int sample_rate, double f_min = 0.0,
               double f_max = -1.0);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::MatrixXd& pseudo_inverse() const { return pseudo_inverse_; }
  std::size_t num_mel() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t num_bins() const { return static_cast<std::size_t>(matrix_.cols()); }
  /// Centre frequency of each mel band in Hz.
  const std::vector<double>& center_hz() const { return center_hz_; }

  /// Maps a mel-domain vector back to STFT bins with the pseudo-inverse.
  Eigen::VectorXd expand(const Eigen::VectorXd& mel_vector) const;

 private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd pseudo_inverse_;
  std::vector<double> center_hz_;
};

/// ln(max(Mel * |X|, floor)) per frame.
FeatureMatrix mel_features(const TfCoefficients& coeffs, const MelTransform& mel);

}  // namespace warpfb
