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

#include "warpfb/features.hpp"

#include <algorithm>
#include <cmath>

#include "warpfb/errors.hpp"

namespace warpfb {

std::string to_string(FeatureDomain domain) {
  switch (domain) {
    case FeatureDomain::stft: return "stft";
    case FeatureDomain::mel: return "mel";
    case FeatureDomain::wfbf: return "wfbf";
  }
  return "unknown";
}

FeatureMatrix log_magnitude(const TfCoefficients& coeffs) {
  FeatureMatrix out;
  out.domain = coeffs.domain == TfDomain::stft ? FeatureDomain::stft : FeatureDomain::wfbf;
  const std::size_t grid = coeffs.max_frames();
  out.values.assign(coeffs.num_channels(), std::vector<double>(grid));
  for (std::size_t c = 0; c < coeffs.num_channels(); ++c) {
    const auto& ch = coeffs.data[c];
    if (ch.empty()) {
      std::fill(out.values[c].begin(), out.values[c].end(), std::log(kMagnitudeFloor));
      continue;
    }
    for (std::size_t j = 0; j < grid; ++j) {
      const std::size_t k = j * ch.size() / grid;
      out.values[c][j] = std::log(std::max(std::abs(ch[k]), kMagnitudeFloor));
    }
  }
  return out;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelTransform::MelTransform(std::size_t num_mel, std::size_t num_bins, int sample_rate,
                           double f_min, double f_max) {
  if (num_mel < 1) throw ConfigurationError("MelTransform: num_mel must be >= 1");
  if (num_bins < 2) throw ConfigurationError("MelTransform: num_bins must be >= 2");
  if (sample_rate <= 0) throw ConfigurationError("MelTransform: sample rate must be positive");
  const double nyquist = sample_rate / 2.0;
  if (f_max < 0.0) f_max = nyquist;
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= nyquist)) {
    throw ConfigurationError("MelTransform: need 0 <= f_min < f_max <= Nyquist");
  }

  const double fft_size = 2.0 * static_cast<double>(num_bins - 1);
  const double hz_per_bin = sample_rate / fft_size;
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> edges(num_mel + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                      static_cast<double>(num_mel + 1));
  }

  matrix_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_mel),
                                  static_cast<Eigen::Index>(num_bins));
  center_hz_.resize(num_mel);
  for (std::size_t m = 0; m < num_mel; ++m) {
    const double lo = edges[m];
    const double centre = edges[m + 1];
    const double hi = edges[m + 2];
    center_hz_[m] = centre;
    const auto row = static_cast<Eigen::Index>(m);
    for (std::size_t b = 0; b < num_bins; ++b) {
      const double f = static_cast<double>(b) * hz_per_bin;
      double w = 0.0;
      if (f > lo && f <= centre) {
        w = (f - lo) / (centre - lo);
      } else if (f > centre && f < hi) {
        w = (hi - f) / (hi - centre);
      }
      matrix_(row, static_cast<Eigen::Index>(b)) = w;
    }
    // Bands narrower than the bin spacing fall back to their nearest bin.
    if (matrix_.row(row).sum() <= 0.0) {
      const auto nearest = static_cast<Eigen::Index>(
          std::min<double>(std::round(centre / hz_per_bin), static_cast<double>(num_bins - 1)));
      matrix_(row, nearest) = 1.0;
    }
    matrix_.row(row) /= matrix_.row(row).sum();
  }

  pseudo_inverse_ = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(matrix_).pseudoInverse();
}

Eigen::VectorXd MelTransform::expand(const Eigen::VectorXd& mel_vector) const {
  if (static_cast<std::size_t>(mel_vector.size()) != num_mel()) {
    throw ConfigurationError("MelTransform::expand: dimension mismatch");
  }
  return pseudo_inverse_ * mel_vector;
}

FeatureMatrix mel_features(const TfCoefficients& coeffs, const MelTransform& mel) {
  if (coeffs.domain != TfDomain::stft) {
    throw ConfigurationError("mel_features: requires uniform STFT coefficients");
  }
  if (coeffs.num_channels() != mel.num_bins()) {
    throw ConfigurationError("mel_features: " + std::to_string(coeffs.num_channels()) +
                             " STFT bins but mel matrix expects " +
                             std::to_string(mel.num_bins()));
  }
  const std::size_t frames = coeffs.max_frames();
  FeatureMatrix out;
  out.domain = FeatureDomain::mel;
  out.values.assign(mel.num_mel(), std::vector<double>(frames));
  Eigen::VectorXd magnitude(static_cast<Eigen::Index>(mel.num_bins()));
  for (std::size_t k = 0; k < frames; ++k) {
    for (std::size_t b = 0; b < mel.num_bins(); ++b) {
      magnitude(static_cast<Eigen::Index>(b)) = std::abs(coeffs.data[b][k]);
    }
    const Eigen::VectorXd banded = mel.matrix() * magnitude;
    for (std::size_t m = 0; m < mel.num_mel(); ++m) {
      out.values[m][k] = std::log(std::max(banded(static_cast<Eigen::Index>(m)), kMagnitudeFloor));
    }
  }
  return out;
}

}  // namespace warpfb
