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

#include "warpfb/tf_coefficients.hpp"

#include <algorithm>

#include "warpfb/errors.hpp"

namespace warpfb {

std::string to_string(TfDomain domain) {
  return domain == TfDomain::stft ? "stft" : "wfbf";
}

std::size_t TfCoefficients::max_frames() const {
  std::size_t m = 0;
  for (const auto& ch : data) m = std::max(m, ch.size());
  return m;
}

std::size_t TfCoefficients::total_size() const {
  std::size_t n = 0;
  for (const auto& ch : data) n += ch.size();
  return n;
}

double TfCoefficients::channel_rate(std::size_t channel) const {
  return static_cast<double>(sample_rate) / static_cast<double>(hops.at(channel));
}

bool TfCoefficients::same_layout(const TfCoefficients& other) const {
  if (domain != other.domain || signal_length != other.signal_length ||
      sample_rate != other.sample_rate || hops != other.hops ||
      data.size() != other.data.size()) {
    return false;
  }
  for (std::size_t c = 0; c < data.size(); ++c) {
    if (data[c].size() != other.data[c].size()) return false;
  }
  return true;
}

TfCoefficients TfCoefficients::zeros_like() const {
  TfCoefficients out = *this;
  for (auto& ch : out.data) std::fill(ch.begin(), ch.end(), Complex{});
  return out;
}

double TfCoefficients::energy() const {
  double e = 0.0;
  for (const auto& ch : data)
    for (const Complex& c : ch) e += std::norm(c);
  return e;
}

void require_same_layout(const TfCoefficients& a, const TfCoefficients& b,
                         const char* what) {
  if (!a.same_layout(b)) throw InvalidInput(std::string(what) + ": layout mismatch");
}

TfCoefficients operator+(const TfCoefficients& a, const TfCoefficients& b) {
  require_same_layout(a, b, "TfCoefficients::operator+");
  TfCoefficients out = a;
  for (std::size_t c = 0; c < out.data.size(); ++c)
    for (std::size_t k = 0; k < out.data[c].size(); ++k) out.data[c][k] += b.data[c][k];
  return out;
}

TfCoefficients operator*(double gain, const TfCoefficients& a) {
  TfCoefficients out = a;
  for (auto& ch : out.data)
    for (Complex& c : ch) c *= gain;
  return out;
}

}  // namespace warpfb
