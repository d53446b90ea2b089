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

#include "warpfb/eval.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <utility>

#include <nlohmann/json.hpp>

#include "warpfb/errors.hpp"
#include "warpfb/csv.hpp"
#include "warpfb/features.hpp"
#include "warpfb/filterbank_io.hpp"
#include "warpfb/parallel.hpp"
#include "warpfb/wav.hpp"

namespace warpfb {

using nlohmann::json;

double sdr(const TimeSignal& reference, const TimeSignal& estimate) {
  if (reference.size() != estimate.size()) {
    throw InvalidInput("sdr: reference has " + std::to_string(reference.size()) +
                       " samples, estimate has " + std::to_string(estimate.size()));
  }
  const double ref_energy = reference.energy();
  if (!(ref_energy > 0.0)) throw InvalidInput("sdr: reference has zero energy");
  double residual = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = estimate[i] - reference[i];
    residual += d * d;
  }
  if (residual < 1e-20 * ref_energy) return kSdrCapDb;
  return 10.0 * std::log10(ref_energy / residual);
}

// ---------------------------------------------------------------- manifest

std::filesystem::path DatasetManifest::resolve(const std::filesystem::path& p) const {
  return p.is_absolute() ? p : base_dir / p;
}

DatasetManifest manifest_from_json(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("manifest: malformed JSON: ") + e.what());
  }
  DatasetManifest m;
  m.base_dir = base_dir;
  try {
    m.sample_rate = doc.at("sample_rate").get<int>();
    for (const auto& e : doc.at("entries")) {
      ManifestEntry entry;
      entry.clean_path = e.at("clean_path").get<std::string>();
      entry.noise_path = e.at("noise_path").get<std::string>();
      entry.snr_db = e.at("snr_db").get<double>();
      entry.seed = e.value("seed", std::uint64_t{0});
      m.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("manifest: ") + e.what());
  }
  if (m.sample_rate <= 0) throw InvalidInput("manifest: sample_rate must be positive");
  if (m.entries.empty()) throw InvalidInput("manifest: no entries");
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  DatasetManifest m = manifest_from_json(read_text_file(path), path.parent_path());
  auto check = [&](const std::filesystem::path& rel) {
    const auto full = m.resolve(rel);
    if (!std::filesystem::exists(full)) {
      throw InvalidInput("manifest: missing file " + full.string());
    }
    const WavInfo info = read_wav_info(full);
    if (info.sample_rate != m.sample_rate) {
      throw InvalidInput("manifest: " + full.string() + " has sample rate " +
                         std::to_string(info.sample_rate) + ", manifest says " +
                         std::to_string(m.sample_rate));
    }
  };
  for (const auto& e : m.entries) {
    check(e.clean_path);
    check(e.noise_path);
  }
  return m;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"clean_path", e.clean_path.generic_string()},
                       {"noise_path", e.noise_path.generic_string()},
                       {"snr_db", e.snr_db},
                       {"seed", e.seed}});
  }
  json doc = {{"version", 1}, {"sample_rate", manifest.sample_rate}, {"entries", entries}};
  return doc.dump(2) + "\n";
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  write_text_file(path, manifest_to_json(manifest));
}

MixturePair mix_entry(const DatasetManifest& manifest, std::size_t index,
                      std::optional<double> snr_override) {
  if (index >= manifest.entries.size()) throw InvalidInput("mix_entry: index out of range");
  const ManifestEntry& e = manifest.entries[index];
  TimeSignal clean = read_wav(manifest.resolve(e.clean_path));
  const TimeSignal noise_file = read_wav(manifest.resolve(e.noise_path));
  if (clean.sample_rate() != manifest.sample_rate ||
      noise_file.sample_rate() != manifest.sample_rate) {
    throw InvalidInput("mix_entry: sample rate differs from manifest");
  }

  const std::size_t n = clean.size();
  const std::size_t m = noise_file.size();
  std::vector<double> noise(n);
  if (m >= n) {
    std::mt19937_64 rng(e.seed);
    const std::size_t offset = m == n ? 0 : static_cast<std::size_t>(rng() % (m - n + 1));
    for (std::size_t i = 0; i < n; ++i) noise[i] = noise_file[offset + i];
  } else {
    for (std::size_t i = 0; i < n; ++i) noise[i] = noise_file[i % m];
  }
  MixResult mix = mix_at_snr(clean, TimeSignal(std::move(noise), clean.sample_rate()),
                             snr_override.value_or(e.snr_db));
  return MixturePair{std::move(clean), std::move(mix.mixture)};
}

// --------------------------------------------------------------- transform

Transform Transform::stft(StftParams params) {
  params.validate();
  Transform t;
  t.label_ = "STFT";
  t.stft_ = std::move(params);
  return t;
}

Transform Transform::wfbf(std::shared_ptr<const FilterbankSpec> fb, std::string label) {
  if (!fb) throw InvalidInput("Transform: null filterbank");
  Transform t;
  t.label_ = std::move(label);
  t.fb_ = std::move(fb);
  return t;
}

std::size_t Transform::input_dim() const {
  return fb_ ? fb_->channel_count() : stft_->num_bins();
}

TfCoefficients Transform::analyze(const TimeSignal& signal) const {
  if (stft_) return stft_analyze(signal, *stft_);
  if (signal.sample_rate() != fb_->sample_rate()) {
    throw InvalidInput("filterbank was built for " + std::to_string(fb_->sample_rate()) +
                       " Hz, signal is " + std::to_string(signal.sample_rate()) + " Hz");
  }
  if (signal.size() > fb_->signal_length()) {
    throw InvalidInput("signal of " + std::to_string(signal.size()) +
                       " samples exceeds filterbank length " +
                       std::to_string(fb_->signal_length()));
  }
  return wfbf_analyze(signal.padded_to(fb_->signal_length()), *fb_);
}

TimeSignal Transform::synthesize(const TfCoefficients& coeffs, std::size_t length) const {
  if (stft_) return stft_synthesize(coeffs, *stft_, length);
  return wfbf_synthesize(coeffs, *fb_).truncated_to(length);
}

std::string MaskSource::name() const { return estimator_ ? estimator_->name() : "oracle"; }

// ------------------------------------------------------------- enhancement

namespace {

Mask make_mask(const TfCoefficients& x, const TfCoefficients* s, const MaskSource& masks) {
  if (!masks.is_oracle()) return masks.estimator()->estimate(log_magnitude(x), x);
  if (s == nullptr) throw InvalidInput("oracle mask requires the clean reference");
  return psm_oracle(*s, x);
}

}  // namespace

Enhanced enhance_signal(const TimeSignal& noisy, const Transform& transform,
                        const MaskSource& masks, const TimeSignal* clean) {
  const TfCoefficients x = transform.analyze(noisy);
  std::optional<TfCoefficients> s;
  if (clean != nullptr && masks.is_oracle()) s = transform.analyze(*clean);
  Mask mask = make_mask(x, s ? &*s : nullptr, masks);
  TimeSignal y = transform.synthesize(apply_mask(mask, x), noisy.size());
  return Enhanced{std::move(y), std::move(mask)};
}

EvalResult run_enhancement(const DatasetManifest& manifest, const Transform& transform,
                           const MaskSource& masks, const EnhancementOptions& options) {
  EvalResult result;
  result.condition.transform = transform.label();
  result.condition.estimator = masks.name();
  result.condition.num_channels = transform.input_dim();
  result.condition.cost_reduction = options.cost_reduction;
  if (options.snr_override) {
    result.condition.snr_db = options.snr_override;
  } else if (!manifest.entries.empty()) {
    bool uniform = true;
    for (const auto& e : manifest.entries) uniform = uniform && e.snr_db == manifest.entries[0].snr_db;
    if (uniform) result.condition.snr_db = manifest.entries[0].snr_db;
  }

  result.utterances.resize(manifest.entries.size());
  parallel_for(manifest.entries.size(), options.threads, [&](std::size_t i) {
    UtteranceResult& u = result.utterances[i];
    u.index = i;
    u.snr_db = options.snr_override.value_or(manifest.entries[i].snr_db);
    try {
      const MixturePair pair = mix_entry(manifest, i, options.snr_override);
      const TfCoefficients x = transform.analyze(pair.noisy);
      const TfCoefficients s = transform.analyze(pair.clean);
      const Mask mask = make_mask(x, &s, masks);
      TimeSignal enhanced = transform.synthesize(apply_mask(mask, x), pair.noisy.size());
      u.input_sdr_db = sdr(pair.clean, pair.noisy);
      u.output_sdr_db = sdr(pair.clean, enhanced);
      u.mask_cost = cost_mse(mask, x, s, options.cost_reduction);
      if (options.keep_audio) u.enhanced = std::move(enhanced);
    } catch (const std::exception& e) {
      u.error = e.what();
      if (u.error.empty()) u.error = "unknown error";
    }
  });

  bool any_ok = false;
  for (const auto& u : result.utterances) any_ok = any_ok || u.ok();
  if (!any_ok && !result.utterances.empty()) {
    throw Error("run_enhancement: all " + std::to_string(result.utterances.size()) +
                " entries failed; first error: " + result.utterances.front().error);
  }
  return result;
}

namespace {

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

std::string csv_text(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

EvalSummary EvalResult::summary() const {
  EvalSummary s;
  std::vector<double> in, out, gain, cost;
  for (const auto& u : utterances) {
    if (!u.ok()) {
      ++s.failed;
      continue;
    }
    ++s.succeeded;
    in.push_back(u.input_sdr_db);
    out.push_back(u.output_sdr_db);
    gain.push_back(u.improvement_db());
    cost.push_back(u.mask_cost);
  }
  s.mean_mask_cost = mean_std(cost).first;
  std::tie(s.mean_input_sdr_db, s.std_input_sdr_db) = mean_std(in);
  std::tie(s.mean_output_sdr_db, s.std_output_sdr_db) = mean_std(out);
  std::tie(s.mean_improvement_db, s.std_improvement_db) = mean_std(gain);
  return s;
}

void write_results_csv(std::ostream& out, const std::vector<EvalResult>& results) {
  out << "transform,estimator,num_channels,index,snr_db,input_sdr_db,output_sdr_db,"
         "improvement_db,mask_cost,error\n";
  for (const auto& r : results) {
    for (const auto& u : r.utterances) {
      out << csv_text(r.condition.transform) << ',' << csv_text(r.condition.estimator) << ','
          << r.condition.num_channels << ',' << u.index << ',' << csv::format_number(u.snr_db)
          << ',';
      if (u.ok()) {
        out << csv::format_number(u.input_sdr_db) << ',' << csv::format_number(u.output_sdr_db)
            << ',' << csv::format_number(u.improvement_db()) << ','
            << csv::format_number(u.mask_cost) << ',';
      } else {
        out << ",,,," << csv_text(u.error);
      }
      out << '\n';
    }
  }
}

std::string summary_json(const std::vector<EvalResult>& results) {
  json conditions = json::array();
  for (const auto& r : results) {
    const EvalSummary s = r.summary();
    json c = {{"transform", r.condition.transform},
              {"estimator", r.condition.estimator},
              {"num_channels", r.condition.num_channels},
              {"snr_db", r.condition.snr_db ? json(*r.condition.snr_db) : json(nullptr)},
              {"num_utterances", r.utterances.size()},
              {"succeeded", s.succeeded},
              {"failed", s.failed},
              {"input_sdr_db", {{"mean", s.mean_input_sdr_db}, {"std", s.std_input_sdr_db}}},
              {"output_sdr_db", {{"mean", s.mean_output_sdr_db}, {"std", s.std_output_sdr_db}}},
              {"improvement_db",
               {{"mean", s.mean_improvement_db}, {"std", s.std_improvement_db}}},
              {"mask_cost",
               {{"mean", s.mean_mask_cost},
                {"reduction", r.condition.cost_reduction == CostReduction::sum ? "sum" : "mean"}}}};
    json errors = json::array();
    for (const auto& u : r.utterances) {
      if (!u.ok()) errors.push_back({{"index", u.index}, {"error", u.error}});
    }
    c["errors"] = errors;
    conditions.push_back(std::move(c));
  }
  return json{{"conditions", conditions}}.dump(2) + "\n";
}

}  // namespace warpfb
