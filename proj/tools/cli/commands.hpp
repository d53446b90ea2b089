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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace warpfb::cli {

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  int verbosity = 0;
  std::filesystem::path output_dir = ".";
};

/// Thread count from WARPFB_THREADS, or 1 when unset or unparsable.
std::size_t default_threads();

struct StftFlags {
  std::size_t fft_size = 512;
  std::size_t hop = 256;
  std::string window = "hann";
};

struct SynthConfig {
  std::size_t count = 20;
  double duration_s = 2.0;
  int sample_rate = 16000;
  std::vector<double> snrs = {0.0};
};

struct DesignCommandConfig {
  std::filesystem::path manifest;
  StftFlags stft;
  double lambda = 0.1;
  std::size_t channels = 64;
  std::size_t welch_segment = 512;
  double welch_overlap = 0.5;
  std::optional<double> snr;
};

struct FbgenConfig {
  std::string warp = "linear";  // linear | wavelet | file
  double slope_b = 1.0;
  double base_c = 2.0;
  double f_min = 100.0;
  std::filesystem::path warping_file;
  std::size_t channels = 64;
  std::size_t length = 32000;
  int sample_rate = 16000;
  double redundancy = 1.5;
};

struct ResponseConfig {
  std::filesystem::path filterbank;
};

struct EnhanceConfig {
  std::filesystem::path manifest;
  std::filesystem::path input;
  std::filesystem::path clean;
  std::filesystem::path filterbank;  // empty selects the STFT
  StftFlags stft;
  std::string mask = "oracle";  // oracle | ones | wiener
  std::size_t profile_frames = 10;
  std::optional<double> snr;
  std::string cost = "mean";  // mean | sum
  bool write_audio = true;
};

struct EvalConfig {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> filterbanks;
  bool include_stft = true;
  StftFlags stft;
  std::vector<double> snrs = {-6.0, 0.0, 6.0};
  std::string mask = "oracle";
  std::size_t profile_frames = 10;
  std::string cost = "mean";  // mean | sum
};

struct VarianceConfig {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> filterbanks;
  StftFlags stft;
  std::optional<double> snr;
};

/// Each command writes its artifacts plus run_record.json into
/// `global.output_dir` and returns the paths it wrote, relative to it.
std::vector<std::string> cmd_synth(const SynthConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_design(const DesignCommandConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_fbgen(const FbgenConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_response(const ResponseConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_enhance(const EnhanceConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_eval(const EvalConfig& cfg, const GlobalOptions& global);
std::vector<std::string> cmd_variance(const VarianceConfig& cfg, const GlobalOptions& global);

/// Version string baked into the tool.
std::string version();

}  // namespace warpfb::cli
