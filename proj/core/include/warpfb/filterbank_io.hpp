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

#include <filesystem>
#include <string>

#include "warpfb/warping.hpp"
#include "warpfb/wfbf.hpp"

namespace warpfb {

inline constexpr int kFilterbankFormatVersion = 1;

// Filterbank JSON:
//   {version, sample_rate, signal_length, num_channels, redundancy,
//    warping{kind, slope | base,f_min | breakpoints, lambda, normalization},
//    channels[{center_hz, bandwidth_hz, decimation, support[first,last],
//              response_values[]}]}
// Doubles are written with round-trip precision, so load(save(x)) is exact.

std::string warping_to_json(const WarpingFunction& warping);
WarpingFunction warping_from_json(const std::string& text);

std::string filterbank_to_json(const FilterbankSpec& fb);
FilterbankSpec filterbank_from_json(const std::string& text);

void save_warping(const WarpingFunction& warping, const std::filesystem::path& path);
WarpingFunction load_warping(const std::filesystem::path& path);

void save_filterbank(const FilterbankSpec& fb, const std::filesystem::path& path);
FilterbankSpec load_filterbank(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace warpfb
