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

#include "warpfb/warp_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpfb/errors.hpp"
#include "warpfb/fft.hpp"
#include "warpfb/parallel.hpp"

namespace warpfb {

std::size_t WelchConfig::hop() const {
  const double h = std::round(static_cast<double>(segment_length) * (1.0 - overlap));
  return std::max<std::size_t>(1, static_cast<std::size_t>(h));
}

void WelchConfig::validate() const {
  if (segment_length < 2) throw ConfigurationError("Welch: segment length must be >= 2");
  if (!(overlap >= 0.0 && overlap < 1.0)) {
    throw ConfigurationError("Welch: overlap must lie in [0, 1)");
  }
}

void DesignConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigurationError("design: lambda must be finite and >= 0");
  }
  if (num_channels < 2) throw ConfigurationError("design: num_channels must be >= 2");
  stft.validate();
  welch.validate();
}

double ErrorPsd::total_power() const {
  double total = 0.0;
  for (double s : sigma) total += s;
  return total * bin_hz;
}

TfCoefficients oracle_error(const TfCoefficients& clean, const TfCoefficients& noisy) {
  require_same_layout(clean, noisy, "oracle_error");
  const Mask g = psm_oracle(clean, noisy);
  TfCoefficients eps = noisy;
  for (std::size_t c = 0; c < eps.num_channels(); ++c)
    for (std::size_t k = 0; k < eps.data[c].size(); ++k)
      eps.data[c][k] = g.at(c, k) * noisy.data[c][k] - clean.data[c][k];
  return eps;
}

TimeSignal oracle_error_signal(const TimeSignal& clean, const TimeSignal& noisy,
                               const StftParams& stft) {
  if (clean.size() != noisy.size() || clean.sample_rate() != noisy.sample_rate()) {
    throw InvalidInput("oracle_error_signal: clean and noisy signals differ in shape");
  }
  const auto eps = oracle_error(stft_analyze(clean, stft), stft_analyze(noisy, stft));
  return stft_synthesize(eps, stft, clean.size());
}

ErrorPsd welch_psd(const TimeSignal& error_signal, const WelchConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.segment_length;
  if (error_signal.size() < n) {
    throw InvalidInput("welch_psd: signal of " + std::to_string(error_signal.size()) +
                       " samples is shorter than one segment (" + std::to_string(n) + ")");
  }
  const std::size_t hop = cfg.hop();
  const std::size_t segments = (error_signal.size() - n) / hop + 1;
  const auto window = make_window(cfg.window, n);
  double window_power = 0.0;
  for (double w : window) window_power += w * w;
  const double fs = error_signal.sample_rate();
  const std::size_t bins = n / 2 + 1;

  std::vector<double> acc(bins, 0.0);
  std::vector<double> frame(n);
  const auto x = error_signal.samples();
  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t start = s * hop;
    for (std::size_t i = 0; i < n; ++i) frame[i] = window[i] * x[start + i];
    const auto spec = fft::forward_real(frame);
    for (std::size_t b = 0; b < bins; ++b) acc[b] += std::norm(spec[b]);
  }

  ErrorPsd psd;
  psd.sigma.resize(bins);
  psd.bin_hz = fs / static_cast<double>(n);
  psd.num_segments = segments;
  psd.normalization = "one-sided PSD, power per Hz";
  const double scale = 1.0 / (fs * window_power * static_cast<double>(segments));
  for (std::size_t b = 0; b < bins; ++b) {
    const bool unpaired = b == 0 || (n % 2 == 0 && b == n / 2);
    psd.sigma[b] = acc[b] * scale * (unpaired ? 1.0 : 2.0);
  }
  return psd;
}

std::vector<double> warping_cumsum(std::span<const double> sigma, double lambda) {
  double mean = 0.0;
  for (double s : sigma) mean += s;
  mean /= static_cast<double>(sigma.size());
  std::vector<double> out(sigma.size());
  double running = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    running += (mean > 0.0 ? sigma[i] / mean : 0.0) + lambda;
    out[i] = running;
  }
  return out;
}

WarpingFunction design_warping(const ErrorPsd& sigma, double lambda, std::size_t num_channels) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigurationError("design_warping: lambda must be finite and >= 0");
  }
  if (num_channels < 2) throw ConfigurationError("design_warping: num_channels must be >= 2");
  if (sigma.sigma.size() < 2) throw InvalidInput("design_warping: PSD needs at least two bins");
  if (!(sigma.bin_hz > 0.0)) throw InvalidInput("design_warping: PSD bin spacing must be positive");
  bool any_mass = false;
  for (double s : sigma.sigma) {
    if (!std::isfinite(s) || s < 0.0) {
      throw InvalidInput("design_warping: PSD entries must be finite and non-negative");
    }
    any_mass = any_mass || s > 0.0;
  }
  if (!any_mass && lambda == 0.0) {
    throw DegenerateInput("design_warping: all-zero PSD with lambda = 0 gives no warping");
  }

  const auto values = warping_cumsum(sigma.sigma, lambda);
  std::vector<Breakpoint> bps(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) bps[i] = {sigma.frequency_hz(i), values[i]};

  // Zero-PSD bins with lambda = 0 produce flat runs; those are not a valid
  // warping.
  for (std::size_t i = 1; i < bps.size(); ++i) {
    if (!(bps[i].warped > bps[i - 1].warped)) {
      throw DegenerateInput("design_warping: PSD vanishes at " +
                            std::to_string(bps[i].hz) +
                            " Hz and lambda = 0, so the warping is not strictly increasing");
    }
  }
  WarpingFunction w = WarpingFunction::tabulated(std::move(bps));
  w.lambda = lambda;
  w.normalization = "cumsum(sigma / mean(sigma) + lambda)";
  return w;
}

namespace {

void require_pooled_layout(std::span<const TfCoefficients> errors, const char* what) {
  if (errors.empty()) throw InvalidInput(std::string(what) + ": empty error collection");
  const TfCoefficients& ref = errors.front();
  for (const auto& e : errors) {
    if (e.domain != ref.domain || e.hops != ref.hops || e.num_channels() != ref.num_channels()) {
      throw InvalidInput(std::string(what) + ": error matrices do not share one layout");
    }
  }
}

// Two-pass pooled variance: mean |x|^2 - |mean x|^2 evaluated as the mean of
// |x - mean|^2.
std::vector<double> pooled_variance(std::span<const TfCoefficients> errors) {
  const std::size_t channels = errors.front().num_channels();
  std::vector<double> var(channels, 0.0);
  for (std::size_t c = 0; c < channels; ++c) {
    Complex sum{};
    std::size_t count = 0;
    for (const auto& e : errors) {
      for (const Complex& v : e.data[c]) sum += v;
      count += e.data[c].size();
    }
    if (count == 0) continue;
    const Complex mean = sum / static_cast<double>(count);
    double acc = 0.0;
    for (const auto& e : errors)
      for (const Complex& v : e.data[c]) acc += std::norm(v - mean);
    var[c] = acc / static_cast<double>(count);
  }
  return var;
}

}  // namespace

FrequencyWeights compute_weights(std::span<const TfCoefficients> errors) {
  require_pooled_layout(errors, "compute_weights");
  const auto var = pooled_variance(errors);
  FrequencyWeights w;
  w.weights.resize(var.size());
  for (std::size_t c = 0; c < var.size(); ++c) {
    w.weights[c] = var[c] > 0.0 ? std::min(1.0 / std::sqrt(var[c]), kMaxWeight) : kMaxWeight;
  }
  return w;
}

double BandVariance::max_min_ratio() const {
  if (variance.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto [lo, hi] = std::minmax_element(variance.begin(), variance.end());
  if (*lo <= 0.0) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

BandVariance band_error_variance(std::span<const TfCoefficients> errors) {
  require_pooled_layout(errors, "band_error_variance");
  BandVariance out;
  out.variance = pooled_variance(errors);
  out.center_hz = errors.front().center_hz;
  return out;
}

DesignResult design_from_pairs(std::span<const MixturePair> pairs, const DesignConfig& cfg,
                               std::size_t threads) {
  cfg.validate();
  if (pairs.empty()) throw InvalidInput("design: no training pairs");
  const int fs = pairs.front().clean.sample_rate();
  std::vector<std::vector<double>> per_utterance(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    if (pairs[i].clean.sample_rate() != fs) {
      throw InvalidInput("design: training pairs differ in sample rate");
    }
    per_utterance[i] = oracle_error_signal(pairs[i].clean, pairs[i].noisy, cfg.stft).data();
  });

  std::vector<double> joined;
  for (const auto& e : per_utterance) joined.insert(joined.end(), e.begin(), e.end());
  ErrorPsd psd = welch_psd(TimeSignal(std::move(joined), fs), cfg.welch);
  WarpingFunction warping = design_warping(psd, cfg.lambda, cfg.num_channels);
  return DesignResult{std::move(psd), std::move(warping)};
}

}  // namespace warpfb
