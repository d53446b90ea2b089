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
#include <memory>
#include <string>
#include <vector>

#include "warpfb/features.hpp"
#include "warpfb/tf_coefficients.hpp"

namespace warpfb {

/// Real gain per coefficient, shaped like a TfCoefficients layout. The
/// constructor rejects values outside [0, 1].
class Mask {
 public:
  explicit Mask(std::vector<std::vector<double>> values);

  static Mask filled(const TfCoefficients& layout, double value);

  const std::vector<std::vector<double>>& values() const { return values_; }
  double at(std::size_t channel, std::size_t frame) const { return values_[channel][frame]; }
  std::size_t num_channels() const { return values_.size(); }
  bool matches(const TfCoefficients& layout) const;

 private:
  std::vector<std::vector<double>> values_;
};

/// Per-channel weights W[w] of the weighted MSE; all entries finite and > 0.
struct FrequencyWeights {
  std::vector<double> weights;
};

/// min(max(z, a), b). Throws ConfigurationError when a > b.
double truncate(double z, double a, double b);

/// Untruncated phase-sensitive mask |S|/|X| cos(phi_S - phi_X); 0 when X = 0.
double psm_value(Complex clean, Complex noisy);

/// Truncated PSM, element-wise.
Mask psm_oracle(const TfCoefficients& clean, const TfCoefficients& noisy);

/// G * X element-wise.
TfCoefficients apply_mask(const Mask& mask, const TfCoefficients& noisy);

enum class CostReduction { sum, mean };

/// sum |G X - S|^2, or its average over all coefficients.
double cost_mse(const Mask& mask, const TfCoefficients& noisy, const TfCoefficients& clean,
                CostReduction reduction = CostReduction::sum);

/// sum |W[w] (G X - S)|^2, or its average over all coefficients.
double cost_weighted_mse(const Mask& mask, const TfCoefficients& noisy,
                         const TfCoefficients& clean, const FrequencyWeights& weights,
                         CostReduction reduction = CostReduction::sum);

/// Per-channel terms of cost_weighted_mse (summed over frames).
std::vector<double> weighted_band_costs(const Mask& mask, const TfCoefficients& noisy,
                                        const TfCoefficients& clean,
                                        const FrequencyWeights& weights);

/// Seam where a trained mask regressor plugs in. Implementations must be
/// reentrant: estimate() may be called concurrently on one instance.
class MaskEstimator {
 public:
  virtual ~MaskEstimator() = default;
  virtual Mask estimate(const FeatureMatrix& features, const TfCoefficients& noisy) const = 0;
  virtual std::string name() const = 0;
};

/// Always returns G = 1 (identity processing).
class UnitMaskEstimator final : public MaskEstimator {
 public:
  Mask estimate(const FeatureMatrix& features, const TfCoefficients& noisy) const override;
  std::string name() const override { return "ones"; }
};

/// Spectral-subtraction style gain G = T[0,1](1 - noise_power / |X|^2) with
/// the per-channel noise power averaged over the leading frames.
///
/// `noise_profile_frames` counts frames of the slowest channel; faster
/// channels of a multirate layout average over the same time span.
class WienerBaselineEstimator final : public MaskEstimator {
 public:
  explicit WienerBaselineEstimator(std::size_t noise_profile_frames);

  Mask estimate(const FeatureMatrix& features, const TfCoefficients& noisy) const override;
  std::string name() const override { return "wiener"; }

  std::vector<double> noise_power(const TfCoefficients& noisy) const;

 private:
  std::size_t profile_frames_;
};

std::unique_ptr<MaskEstimator> wiener_baseline_estimator(std::size_t noise_profile_frames);

}  // namespace warpfb
