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
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "warpfb/masking.hpp"
#include "warpfb/signal.hpp"
#include "warpfb/stft.hpp"
#include "warpfb/tf_coefficients.hpp"
#include "warpfb/warp_design.hpp"
#include "warpfb/wfbf.hpp"

namespace warpfb {

/// Energy-ratio SDR in dB, capped at kSdrCapDb when the residual is
/// negligible relative to the reference.
double sdr(const TimeSignal& reference, const TimeSignal& estimate);

inline constexpr double kSdrCapDb = 100.0;

struct ManifestEntry {
  std::filesystem::path clean_path;
  std::filesystem::path noise_path;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  int sample_rate = 16000;
  /// Relative entry paths resolve against this directory.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Parses a manifest and checks that every referenced file exists and
/// carries the manifest sample rate.
DatasetManifest load_manifest(const std::filesystem::path& path);
DatasetManifest manifest_from_json(const std::string& text, const std::filesystem::path& base_dir);
std::string manifest_to_json(const DatasetManifest& manifest);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Reads entry i and mixes it at its own SNR, or at `snr_override` if given.
/// Noise longer than the clean signal is cut at an offset drawn from the
/// entry seed; shorter noise is tiled.
MixturePair mix_entry(const DatasetManifest& manifest, std::size_t index,
                      std::optional<double> snr_override = std::nullopt);

/// Either an STFT configuration or a filterbank. Signals shorter than a
/// filterbank's design length are zero-padded before analysis and cut back
/// after synthesis.
class Transform {
 public:
  static Transform stft(StftParams params);
  static Transform wfbf(std::shared_ptr<const FilterbankSpec> fb, std::string label = "WFBF");

  const std::string& label() const { return label_; }
  TfDomain domain() const { return fb_ ? TfDomain::wfbf : TfDomain::stft; }
  /// Bins for STFT, channels for WFBF.
  std::size_t input_dim() const;

  TfCoefficients analyze(const TimeSignal& signal) const;
  TimeSignal synthesize(const TfCoefficients& coeffs, std::size_t length) const;

 private:
  Transform() = default;

  std::string label_;
  std::optional<StftParams> stft_;
  std::shared_ptr<const FilterbankSpec> fb_;
};

/// Where masks come from in an enhancement run. The oracle needs the clean
/// reference, so it does not fit the MaskEstimator interface.
class MaskSource {
 public:
  static MaskSource oracle() { return MaskSource(nullptr); }
  static MaskSource from(const MaskEstimator& estimator) { return MaskSource(&estimator); }

  bool is_oracle() const { return estimator_ == nullptr; }
  const MaskEstimator* estimator() const { return estimator_; }
  std::string name() const;

 private:
  explicit MaskSource(const MaskEstimator* e) : estimator_(e) {}
  const MaskEstimator* estimator_;
};

struct EnhancementOptions {
  std::optional<double> snr_override;
  std::size_t threads = 1;
  bool keep_audio = false;
  /// Reduction for the transform-domain mask cost |G X - S|^2.
  CostReduction cost_reduction = CostReduction::mean;
};

struct UtteranceResult {
  std::size_t index = 0;
  double snr_db = 0.0;
  double input_sdr_db = 0.0;
  double output_sdr_db = 0.0;
  double mask_cost = 0.0;
  std::string error;
  std::optional<TimeSignal> enhanced;

  bool ok() const { return error.empty(); }
  double improvement_db() const { return output_sdr_db - input_sdr_db; }
};

struct EvalCondition {
  std::string transform;
  std::string estimator;
  std::size_t num_channels = 0;
  /// Present when every entry was mixed at the same SNR.
  std::optional<double> snr_db;
  CostReduction cost_reduction = CostReduction::mean;
};

struct EvalSummary {
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  double mean_input_sdr_db = 0.0;
  double std_input_sdr_db = 0.0;
  double mean_output_sdr_db = 0.0;
  double std_output_sdr_db = 0.0;
  double mean_improvement_db = 0.0;
  double std_improvement_db = 0.0;
  double mean_mask_cost = 0.0;
};

struct EvalResult {
  EvalCondition condition;
  std::vector<UtteranceResult> utterances;

  /// Population statistics over the successful entries.
  EvalSummary summary() const;
};

/// Runs mix, analyze, mask, apply, synthesize and score for every entry.
/// Entry failures are recorded in the result; throws only when all fail.
EvalResult run_enhancement(const DatasetManifest& manifest, const Transform& transform,
                           const MaskSource& masks, const EnhancementOptions& options = {});

struct Enhanced {
  TimeSignal signal;
  Mask mask;
};

/// Enhances a single mixture. The oracle source needs `clean`.
Enhanced enhance_signal(const TimeSignal& noisy, const Transform& transform,
                        const MaskSource& masks, const TimeSignal* clean = nullptr);

void write_results_csv(std::ostream& out, const std::vector<EvalResult>& results);
std::string summary_json(const std::vector<EvalResult>& results);

}  // namespace warpfb
