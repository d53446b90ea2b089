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

#include "warpfb/masking.hpp"

#include <algorithm>
#include <cmath>

#include "warpfb/errors.hpp"

namespace warpfb {
namespace {

constexpr double kPowerFloor = 1e-12;

void require_weights(const TfCoefficients& layout, const FrequencyWeights& w) {
  if (w.weights.size() != layout.num_channels()) {
    throw InvalidInput("weighted MSE: " + std::to_string(w.weights.size()) +
                       " weights for " + std::to_string(layout.num_channels()) + " channels");
  }
}

void require_mask(const Mask& mask, const TfCoefficients& layout, const char* what) {
  if (!mask.matches(layout)) throw InvalidInput(std::string(what) + ": mask layout mismatch");
}

}  // namespace

Mask::Mask(std::vector<std::vector<double>> values) : values_(std::move(values)) {
  for (const auto& ch : values_) {
    for (double v : ch) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("Mask: value outside [0, 1]");
    }
  }
}

Mask Mask::filled(const TfCoefficients& layout, double value) {
  std::vector<std::vector<double>> v(layout.num_channels());
  for (std::size_t c = 0; c < v.size(); ++c) v[c].assign(layout.num_frames(c), value);
  return Mask(std::move(v));
}

bool Mask::matches(const TfCoefficients& layout) const {
  if (values_.size() != layout.num_channels()) return false;
  for (std::size_t c = 0; c < values_.size(); ++c) {
    if (values_[c].size() != layout.num_frames(c)) return false;
  }
  return true;
}

double truncate(double z, double a, double b) {
  if (a > b) throw ConfigurationError("truncate: lower bound exceeds upper bound");
  return std::min(std::max(z, a), b);
}

double psm_value(Complex clean, Complex noisy) {
  const double px = std::norm(noisy);
  if (px == 0.0) return 0.0;
  return (clean * std::conj(noisy)).real() / px;
}

Mask psm_oracle(const TfCoefficients& clean, const TfCoefficients& noisy) {
  require_same_layout(clean, noisy, "psm_oracle");
  std::vector<std::vector<double>> g(noisy.num_channels());
  for (std::size_t c = 0; c < g.size(); ++c) {
    g[c].resize(noisy.num_frames(c));
    for (std::size_t k = 0; k < g[c].size(); ++k) {
      g[c][k] = truncate(psm_value(clean.data[c][k], noisy.data[c][k]), 0.0, 1.0);
    }
  }
  return Mask(std::move(g));
}

TfCoefficients apply_mask(const Mask& mask, const TfCoefficients& noisy) {
  require_mask(mask, noisy, "apply_mask");
  TfCoefficients out = noisy;
  for (std::size_t c = 0; c < out.num_channels(); ++c)
    for (std::size_t k = 0; k < out.data[c].size(); ++k) out.data[c][k] *= mask.at(c, k);
  return out;
}

std::vector<double> weighted_band_costs(const Mask& mask, const TfCoefficients& noisy,
                                        const TfCoefficients& clean,
                                        const FrequencyWeights& weights) {
  require_same_layout(noisy, clean, "weighted MSE");
  require_mask(mask, noisy, "weighted MSE");
  require_weights(noisy, weights);
  std::vector<double> bands(noisy.num_channels(), 0.0);
  for (std::size_t c = 0; c < bands.size(); ++c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < noisy.data[c].size(); ++k) {
      acc += std::norm(mask.at(c, k) * noisy.data[c][k] - clean.data[c][k]);
    }
    bands[c] = weights.weights[c] * weights.weights[c] * acc;
  }
  return bands;
}

double cost_weighted_mse(const Mask& mask, const TfCoefficients& noisy,
                         const TfCoefficients& clean, const FrequencyWeights& weights,
                         CostReduction reduction) {
  const auto bands = weighted_band_costs(mask, noisy, clean, weights);
  double total = 0.0;
  for (double b : bands) total += b;
  if (reduction == CostReduction::mean) total /= static_cast<double>(noisy.total_size());
  return total;
}

double cost_mse(const Mask& mask, const TfCoefficients& noisy, const TfCoefficients& clean,
                CostReduction reduction) {
  require_same_layout(noisy, clean, "cost_mse");
  require_mask(mask, noisy, "cost_mse");
  double total = 0.0;
  for (std::size_t c = 0; c < noisy.num_channels(); ++c)
    for (std::size_t k = 0; k < noisy.data[c].size(); ++k)
      total += std::norm(mask.at(c, k) * noisy.data[c][k] - clean.data[c][k]);
  if (reduction == CostReduction::mean) total /= static_cast<double>(noisy.total_size());
  return total;
}

Mask UnitMaskEstimator::estimate(const FeatureMatrix&, const TfCoefficients& noisy) const {
  return Mask::filled(noisy, 1.0);
}

WienerBaselineEstimator::WienerBaselineEstimator(std::size_t noise_profile_frames)
    : profile_frames_(noise_profile_frames) {
  if (profile_frames_ < 1) {
    throw ConfigurationError("wiener baseline: noise_profile_frames must be >= 1");
  }
}

std::vector<double> WienerBaselineEstimator::noise_power(const TfCoefficients& noisy) const {
  std::size_t slowest = noisy.max_frames();
  for (const auto& ch : noisy.data) slowest = std::min(slowest, ch.size());
  if (noisy.num_channels() == 0 || slowest < profile_frames_) {
    throw InvalidInput("wiener baseline: " + std::to_string(profile_frames_) +
                       " profile frames requested but only " + std::to_string(slowest) +
                       " available");
  }
  std::vector<double> power(noisy.num_channels());
  for (std::size_t c = 0; c < power.size(); ++c) {
    const auto& ch = noisy.data[c];
    const std::size_t count =
        std::min(ch.size(), (profile_frames_ * ch.size() + slowest - 1) / slowest);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) acc += std::norm(ch[k]);
    power[c] = acc / static_cast<double>(count);
  }
  return power;
}

Mask WienerBaselineEstimator::estimate(const FeatureMatrix&, const TfCoefficients& noisy) const {
  const auto noise = noise_power(noisy);
  std::vector<std::vector<double>> g(noisy.num_channels());
  for (std::size_t c = 0; c < g.size(); ++c) {
    g[c].resize(noisy.num_frames(c));
    for (std::size_t k = 0; k < g[c].size(); ++k) {
      const double px = std::max(std::norm(noisy.data[c][k]), kPowerFloor);
      g[c][k] = truncate(1.0 - noise[c] / px, 0.0, 1.0);
    }
  }
  return Mask(std::move(g));
}

std::unique_ptr<MaskEstimator> wiener_baseline_estimator(std::size_t noise_profile_frames) {
  return std::make_unique<WienerBaselineEstimator>(noise_profile_frames);
}

}  // namespace warpfb
