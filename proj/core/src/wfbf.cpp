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

#include "warpfb/wfbf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warpfb/errors.hpp"
#include "warpfb/fft.hpp"

namespace warpfb {
namespace {

constexpr double kFrameOperatorFloor = 1e-12;
constexpr double kEdgeFloor = 1e-20;

std::size_t positive_mod(long v, std::size_t m) {
  const long mm = static_cast<long>(m);
  long r = v % mm;
  if (r < 0) r += mm;
  return static_cast<std::size_t>(r);
}

// Largest power of two that divides n and does not exceed limit (>= 1).
std::size_t power_of_two_decimation(std::size_t n, double limit) {
  std::size_t a = 1;
  while (static_cast<double>(a * 2) <= limit && n % (a * 2) == 0) a *= 2;
  return a;
}

}  // namespace

double WfbfChannel::response_at(long bin) const {
  if (bin < first_bin || bin > last_bin) return 0.0;
  return response[static_cast<std::size_t>(bin - first_bin)];
}

double warped_prototype(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  const double c = std::cos(std::numbers::pi * x / 2.0);
  return c * c;
}

WarpingFunction warping_stft(double b) { return WarpingFunction::linear(b); }

WarpingFunction warping_wavelet(double c, double f_min) {
  return WarpingFunction::logarithmic(c, f_min);
}

// ---------------------------------------------------------------------------
// NormalizedWarp

NormalizedWarp::NormalizedWarp(const WarpingFunction& warping, double nyquist_hz,
                               std::size_t num_channels)
    : warping_(warping), nyquist_(nyquist_hz), channels_(static_cast<double>(num_channels)) {
  offset_ = warping_.evaluate(0.0);
  const double top = warping_.evaluate(nyquist_);
  if (!(top > offset_) || !std::isfinite(top) || !std::isfinite(offset_)) {
    throw ConfigurationError("warping is not increasing over [0, Nyquist]");
  }
  scale_ = channels_ / (top - offset_);
}

double NormalizedWarp::forward_inside(double hz) const {
  return (warping_.evaluate(hz) - offset_) * scale_;
}

double NormalizedWarp::inverse_inside(double warped) const {
  return warping_.inverse(warped / scale_ + offset_);
}

double NormalizedWarp::operator()(double hz) const {
  if (hz < 0.0) return -forward_inside(-hz);
  if (hz > nyquist_) return 2.0 * channels_ - forward_inside(2.0 * nyquist_ - hz);
  return forward_inside(hz);
}

double NormalizedWarp::inverse(double warped) const {
  if (warped <= 0.0) return warped == 0.0 ? 0.0 : -inverse_inside(-warped);
  if (warped >= channels_) {
    return warped == channels_ ? nyquist_ : 2.0 * nyquist_ - inverse_inside(2.0 * channels_ - warped);
  }
  return inverse_inside(warped);
}

// ---------------------------------------------------------------------------
// FilterbankSpec

FilterbankSpec::FilterbankSpec(std::vector<WfbfChannel> channels, std::size_t signal_length,
                               int sample_rate, WarpingFunction warping,
                               std::size_t num_channels, double redundancy)
    : channels_(std::move(channels)),
      signal_length_(signal_length),
      sample_rate_(sample_rate),
      warping_(std::move(warping)),
      num_channels_(num_channels),
      redundancy_(redundancy) {
  const long L = static_cast<long>(signal_length_);
  if (signal_length_ < 2) throw ConfigurationError("filterbank: signal length must be >= 2");
  if (sample_rate_ <= 0) throw ConfigurationError("filterbank: sample rate must be positive");
  if (num_channels_ < 2) throw ConfigurationError("filterbank: need at least 2 channels");
  if (channels_.size() != num_channels_ + 1) {
    throw ConfigurationError("filterbank: expected num_channels + 1 channel entries");
  }

  const std::size_t half = signal_length_ / 2;
  frame_operator_.assign(half + 1, 0.0);

  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const WfbfChannel& ch = channels_[c];
    const std::string tag = "filterbank channel " + std::to_string(c) + ": ";
    if (ch.last_bin < ch.first_bin) throw ConfigurationError(tag + "empty support");
    if (ch.response.size() != ch.support_width()) {
      throw ConfigurationError(tag + "response length does not match support");
    }
    for (double v : ch.response) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ConfigurationError(tag + "response must be finite and non-negative");
      }
    }
    if (ch.decimation < 1 || signal_length_ % ch.decimation != 0) {
      throw ConfigurationError(tag + "decimation must divide the signal length");
    }
    if (ch.support_width() > signal_length_ / ch.decimation) {
      throw ConfigurationError(tag + "painless condition violated (support " +
                               std::to_string(ch.support_width()) + " bins > " +
                               std::to_string(signal_length_ / ch.decimation) + ")");
    }
    const bool is_dc = c == 0;
    const bool is_nyquist = c + 1 == channels_.size();
    if (is_dc) {
      if (ch.first_bin != -ch.last_bin) throw ConfigurationError(tag + "DC channel must be symmetric");
    } else if (is_nyquist) {
      if (ch.first_bin + ch.last_bin != L) {
        throw ConfigurationError(tag + "Nyquist channel must be symmetric about L/2");
      }
    } else if (ch.first_bin < 1 || 2 * ch.last_bin >= L) {
      throw ConfigurationError(tag + "interior channel must lie strictly inside (0, Nyquist)");
    }
    if (is_dc || is_nyquist) {
      for (std::size_t i = 0; i < ch.response.size(); ++i) {
        const double a = ch.response[i];
        const double b = ch.response[ch.response.size() - 1 - i];
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
          throw ConfigurationError(tag + "edge channel response must be symmetric");
        }
      }
    }

    const double w = channel_weight(c) / static_cast<double>(ch.decimation);
    const long lo = std::max<long>(ch.first_bin, 0);
    const long hi = std::min<long>(ch.last_bin, static_cast<long>(half));
    for (long b = lo; b <= hi; ++b) {
      const double g = ch.response_at(b);
      frame_operator_[static_cast<std::size_t>(b)] += w * g * g;
    }
  }

  for (std::size_t f = 0; f <= half; ++f) {
    if (!(frame_operator_[f] > kFrameOperatorFloor)) {
      std::ostringstream msg;
      msg << "filterbank: frame operator is " << frame_operator_[f] << " at bin " << f
          << "; no dual frame exists";
      throw NonInvertibleFrame(msg.str());
    }
  }

  duals_.resize(channels_.size());
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    const WfbfChannel& ch = channels_[c];
    duals_[c].resize(ch.response.size());
    for (long b = ch.first_bin; b <= ch.last_bin; ++b) {
      const long folded = b < 0 ? -b : (2 * b > L ? L - b : b);
      const std::size_t i = static_cast<std::size_t>(b - ch.first_bin);
      duals_[c][i] = ch.response[i] / frame_operator_[static_cast<std::size_t>(folded)];
    }
  }
}

double FilterbankSpec::channel_weight(std::size_t c) const {
  return (c == 0 || c + 1 == channels_.size()) ? 1.0 : 2.0;
}

double FilterbankSpec::achieved_redundancy() const {
  double total = 0.0;
  for (std::size_t c = 0; c < channels_.size(); ++c) {
    total += channel_weight(c) * static_cast<double>(num_frames(c));
  }
  return total / static_cast<double>(signal_length_);
}

double FilterbankSpec::dual_at(std::size_t c, long bin) const {
  const WfbfChannel& ch = channels_[c];
  if (bin < ch.first_bin || bin > ch.last_bin) return 0.0;
  return duals_[c][static_cast<std::size_t>(bin - ch.first_bin)];
}

// ---------------------------------------------------------------------------
// Construction

FilterbankSpec build_filterbank(const WarpingFunction& warping, std::size_t num_channels,
                                std::size_t signal_length, int sample_rate,
                                double redundancy) {
  if (num_channels < 2) throw ConfigurationError("build_filterbank: num_channels must be >= 2");
  if (!(redundancy >= 1.0) || !std::isfinite(redundancy)) {
    throw ConfigurationError("build_filterbank: redundancy must be >= 1");
  }
  if (signal_length < 2) throw ConfigurationError("build_filterbank: signal length must be >= 2");
  if (sample_rate <= 0) throw ConfigurationError("build_filterbank: sample rate must be positive");

  const double fs = sample_rate;
  const double nyquist = fs / 2.0;
  const long L = static_cast<long>(signal_length);
  const long half = L / 2;
  const double hz_per_bin = fs / static_cast<double>(L);
  const NormalizedWarp nu(warping, nyquist, num_channels);

  // Strict monotonicity on the bins the filterbank actually samples.
  double prev = nu(0.0);
  for (long b = 1; b <= half; ++b) {
    const double v = nu(static_cast<double>(b) * hz_per_bin);
    if (!(v > prev)) {
      throw ConfigurationError("build_filterbank: warping is not strictly increasing near " +
                               std::to_string(static_cast<double>(b) * hz_per_bin) + " Hz");
    }
    prev = v;
  }

  std::vector<WfbfChannel> channels;
  channels.reserve(num_channels + 1);
  for (std::size_t c = 0; c <= num_channels; ++c) {
    const double centre = static_cast<double>(c);
    const bool is_dc = c == 0;
    const bool is_nyquist = c == num_channels;

    WfbfChannel ch;
    ch.center_hz = nu.inverse(centre);
    const double lo_hz = nu.inverse(centre - 1.0);
    const double hi_hz = nu.inverse(centre + 1.0);
    ch.bandwidth_hz = hi_hz - lo_hz;

    auto value_at = [&](long b) {
      // Edge channels are evaluated on the one-sided half and mirrored so the
      // stored responses are exactly symmetric.
      long folded = b;
      if (is_dc && b < 0) folded = -b;
      if (is_nyquist && 2 * b > L) folded = L - b;
      return warped_prototype(nu(static_cast<double>(folded) * hz_per_bin) - centre);
    };

    long first = static_cast<long>(std::ceil(lo_hz / hz_per_bin));
    long last = static_cast<long>(std::floor(hi_hz / hz_per_bin));
    if (is_dc) first = -last;
    if (is_nyquist) first = L - last;
    if (!is_dc && !is_nyquist) {
      first = std::max<long>(first, 1);
      last = std::min<long>(last, (L - 1) / 2);
    }
    // Bins that land on the band edge evaluate the bump at |x| = 1 up to
    // rounding; dropping those values keeps translated channels identical.
    while (first <= last && value_at(first) <= kEdgeFloor) ++first;
    while (last >= first && value_at(last) <= kEdgeFloor) --last;
    if (is_dc) first = -last;
    if (is_nyquist) first = L - last;
    if (last < first) {
      throw ConfigurationError("build_filterbank: channel " + std::to_string(c) +
                               " is narrower than one DFT bin; use a longer signal or "
                               "fewer channels");
    }
    ch.first_bin = first;
    ch.last_bin = last;
    ch.response.reserve(ch.support_width());
    for (long b = first; b <= last; ++b) ch.response.push_back(value_at(b));

    channels.push_back(std::move(ch));
  }

  // The widest channel bounds the redundancy the painless condition allows.
  double feasible = static_cast<double>(L);
  for (const auto& ch : channels) {
    feasible = std::min(feasible, static_cast<double>(L) / static_cast<double>(ch.support_width()));
  }
  if (redundancy > feasible) {
    std::ostringstream msg;
    msg << "build_filterbank: painless condition cannot honour redundancy " << redundancy
        << "; largest feasible redundancy is " << feasible;
    throw ConfigurationError(msg.str());
  }
  for (auto& ch : channels) {
    const double width = static_cast<double>(ch.support_width());
    ch.decimation = power_of_two_decimation(signal_length, static_cast<double>(L) / (width * redundancy));
  }

  return FilterbankSpec(std::move(channels), signal_length, sample_rate, warping, num_channels,
                        redundancy);
}

// ---------------------------------------------------------------------------
// Analysis / synthesis

TfCoefficients wfbf_analyze(const TimeSignal& signal, const FilterbankSpec& fb) {
  if (signal.size() != fb.signal_length()) {
    throw InvalidInput("wfbf_analyze: signal length " + std::to_string(signal.size()) +
                       " does not match filterbank length " +
                       std::to_string(fb.signal_length()));
  }
  if (signal.sample_rate() != fb.sample_rate()) {
    throw InvalidInput("wfbf_analyze: sample rate mismatch");
  }
  const std::size_t L = fb.signal_length();
  std::vector<Complex> x(signal.samples().begin(), signal.samples().end());
  const auto spectrum = fft::forward(x);
  const double inv_l = 1.0 / static_cast<double>(L);

  TfCoefficients out;
  out.domain = TfDomain::wfbf;
  out.signal_length = L;
  out.sample_rate = fb.sample_rate();
  out.data.resize(fb.channel_count());
  out.hops.resize(fb.channel_count());
  out.center_hz.resize(fb.channel_count());

  for (std::size_t c = 0; c < fb.channel_count(); ++c) {
    const WfbfChannel& ch = fb.channel(c);
    const std::size_t m = fb.num_frames(c);
    std::vector<Complex> folded(m);
    for (long b = ch.first_bin; b <= ch.last_bin; ++b) {
      folded[positive_mod(b, m)] +=
          spectrum[positive_mod(b, L)] * ch.response[static_cast<std::size_t>(b - ch.first_bin)];
    }
    auto coeffs = fft::backward(folded);
    for (Complex& v : coeffs) v *= inv_l;
    out.data[c] = std::move(coeffs);
    out.hops[c] = ch.decimation;
    out.center_hz[c] = ch.center_hz;
  }
  return out;
}

TimeSignal wfbf_synthesize(const TfCoefficients& coeffs, const FilterbankSpec& fb) {
  if (coeffs.domain != TfDomain::wfbf || coeffs.signal_length != fb.signal_length() ||
      coeffs.num_channels() != fb.channel_count() || coeffs.sample_rate != fb.sample_rate()) {
    throw InvalidInput("wfbf_synthesize: coefficient layout does not match filterbank");
  }
  for (std::size_t c = 0; c < fb.channel_count(); ++c) {
    if (coeffs.num_frames(c) != fb.num_frames(c)) {
      throw InvalidInput("wfbf_synthesize: channel " + std::to_string(c) +
                         " frame count does not match filterbank");
    }
  }
  const std::size_t L = fb.signal_length();
  const long half = static_cast<long>(L / 2);
  std::vector<Complex> one_sided(L / 2 + 1);

  for (std::size_t c = 0; c < fb.channel_count(); ++c) {
    const WfbfChannel& ch = fb.channel(c);
    const std::size_t m = fb.num_frames(c);
    const auto stream = fft::forward(coeffs.data[c]);
    const double weight = fb.channel_weight(c);
    const auto& dual = fb.dual_response(c);
    const long lo = std::max<long>(ch.first_bin, 0);
    const long hi = std::min<long>(ch.last_bin, half);
    for (long b = lo; b <= hi; ++b) {
      one_sided[static_cast<std::size_t>(b)] +=
          weight * dual[static_cast<std::size_t>(b - ch.first_bin)] * stream[positive_mod(b, m)];
    }
  }

  auto samples = fft::backward_real(one_sided, L);
  const double inv_l = 1.0 / static_cast<double>(L);
  for (double& v : samples) v *= inv_l;
  return TimeSignal(std::move(samples), fb.sample_rate());
}

ResponseTable export_frequency_response(const FilterbankSpec& fb) {
  const std::size_t half = fb.signal_length() / 2;
  const double hz_per_bin =
      static_cast<double>(fb.sample_rate()) / static_cast<double>(fb.signal_length());
  ResponseTable table;
  table.frequency_hz.resize(half + 1);
  for (std::size_t f = 0; f <= half; ++f) table.frequency_hz[f] = static_cast<double>(f) * hz_per_bin;
  table.magnitude.assign(fb.channel_count(), std::vector<double>(half + 1, 0.0));
  for (std::size_t c = 0; c < fb.channel_count(); ++c) {
    const WfbfChannel& ch = fb.channel(c);
    for (std::size_t f = 0; f <= half; ++f) {
      table.magnitude[c][f] = std::abs(ch.response_at(static_cast<long>(f)));
    }
  }
  return table;
}

}  // namespace warpfb
