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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "warpfb/csv.hpp"
#include "warpfb/errors.hpp"
#include "warpfb/eval.hpp"
#include "warpfb/features.hpp"
#include "warpfb/filterbank_io.hpp"
#include "warpfb/fixtures.hpp"
#include "warpfb/masking.hpp"
#include "warpfb/parallel.hpp"
#include "warpfb/stft.hpp"
#include "warpfb/warp_design.hpp"
#include "warpfb/wav.hpp"
#include "warpfb/wfbf.hpp"

#ifndef WARPFB_VERSION
#define WARPFB_VERSION "unknown"
#endif

namespace warpfb::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void log(const GlobalOptions& g, int level, const std::string& msg) {
  if (g.verbosity >= level) std::cerr << "[warpfb] " << msg << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

json global_json(const GlobalOptions& g) {
  return {{"seed", g.seed},
          {"threads", g.threads},
          {"verbosity", g.verbosity},
          {"output_dir", g.output_dir.generic_string()}};
}

json stft_json(const StftFlags& s) {
  return {{"fft_size", s.fft_size}, {"hop", s.hop}, {"window", s.window}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json paths_json(const std::vector<fs::path>& paths) {
  json out = json::array();
  for (const auto& p : paths) out.push_back(p.generic_string());
  return out;
}

// The record holds everything needed to re-run the command: resolved flags,
// globals and the tool version. Timestamps are left out on purpose so that
// identical runs produce identical records.
void write_run_record(const GlobalOptions& g, const std::string& command, const json& config,
                      std::vector<std::string>& outputs) {
  outputs.push_back("run_record.json");
  const json record = {{"tool", "warpfb"},     {"version", version()},
                       {"command", command},   {"global", global_json(g)},
                       {"config", config},     {"outputs", outputs}};
  write_text_file(g.output_dir / "run_record.json", record.dump(2) + "\n");
}

StftParams make_stft(const StftFlags& f) {
  StftParams p;
  p.window = make_window(window_kind_from_string(f.window), f.fft_size);
  p.hop = f.hop;
  p.fft_size = f.fft_size;
  p.validate();
  return p;
}

std::string filterbank_label(const FilterbankSpec& fb) {
  const WarpKind kind = fb.warping().kind();
  if (kind == WarpKind::tabulated) return "WFBF-learned";
  if (kind == WarpKind::logarithmic) return "WFBF-wavelet";
  return "WFBF-linear";
}

Transform load_transform(const fs::path& filterbank) {
  auto fb = std::make_shared<const FilterbankSpec>(load_filterbank(filterbank));
  const std::string label = filterbank_label(*fb);
  return Transform::wfbf(std::move(fb), label);
}

std::unique_ptr<MaskEstimator> make_estimator(const std::string& mask, std::size_t profile_frames) {
  if (mask == "oracle") return nullptr;
  if (mask == "ones") return std::make_unique<UnitMaskEstimator>();
  if (mask == "wiener") return wiener_baseline_estimator(profile_frames);
  throw ConfigurationError("unknown mask '" + mask + "' (expected oracle, ones or wiener)");
}

CostReduction cost_reduction(const std::string& name) {
  if (name == "mean") return CostReduction::mean;
  if (name == "sum") return CostReduction::sum;
  throw ConfigurationError("unknown cost reduction '" + name + "' (expected mean or sum)");
}

MaskSource mask_source(const std::unique_ptr<MaskEstimator>& estimator) {
  return estimator ? MaskSource::from(*estimator) : MaskSource::oracle();
}

void save_text(const fs::path& path, const std::string& text) { write_text_file(path, text); }

std::string results_csv(const std::vector<EvalResult>& results) {
  std::ostringstream out;
  write_results_csv(out, results);
  return out.str();
}

std::string snr_text(const std::optional<double>& snr) {
  return snr ? csv::format_number(*snr) : std::string("mixed");
}

// One row per condition, laid out as input SNR, input dimension, transform.
std::string condition_table_csv(const std::vector<EvalResult>& results) {
  std::ostringstream out;
  out << "input_snr_db,input_dim,transform,estimator,utterances,failed,mean_input_sdr_db,"
         "mean_output_sdr_db,std_output_sdr_db,mean_improvement_db,std_improvement_db,"
         "mean_mask_cost\n";
  for (const auto& r : results) {
    const EvalSummary s = r.summary();
    out << snr_text(r.condition.snr_db) << ',' << r.condition.num_channels << ','
        << r.condition.transform << ',' << r.condition.estimator << ',' << r.utterances.size()
        << ',' << s.failed << ',' << csv::format_number(s.mean_input_sdr_db) << ','
        << csv::format_number(s.mean_output_sdr_db) << ','
        << csv::format_number(s.std_output_sdr_db) << ','
        << csv::format_number(s.mean_improvement_db) << ','
        << csv::format_number(s.std_improvement_db) << ','
        << csv::format_number(s.mean_mask_cost) << '\n';
  }
  return out.str();
}

void report_failures(const GlobalOptions& g, const EvalResult& r) {
  for (const auto& u : r.utterances) {
    if (!u.ok()) {
      log(g, 0, "entry " + std::to_string(u.index) + " failed (" + r.condition.transform +
                    "): " + u.error);
    }
  }
}

}  // namespace

std::string version() { return WARPFB_VERSION; }

std::size_t default_threads() {
  if (const char* env = std::getenv("WARPFB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

std::vector<std::string> cmd_synth(const SynthConfig& cfg, const GlobalOptions& g) {
  ensure_dir(g.output_dir);
  FixtureOptions opts;
  opts.count = cfg.count;
  opts.seed = g.seed;
  opts.sample_rate = cfg.sample_rate;
  opts.duration_s = cfg.duration_s;
  opts.snrs = cfg.snrs;
  log(g, 1, "synthesizing " + std::to_string(cfg.count) + " fixtures");
  const DatasetManifest m = synth_fixtures(opts, g.output_dir);

  std::vector<std::string> outputs;
  for (const auto& e : m.entries) {
    outputs.push_back(e.clean_path.generic_string());
    outputs.push_back(e.noise_path.generic_string());
  }
  outputs.push_back("manifest.json");
  write_run_record(g, "synth",
                   {{"count", cfg.count},
                    {"duration_s", cfg.duration_s},
                    {"sample_rate", cfg.sample_rate},
                    {"snrs", cfg.snrs}},
                   outputs);
  return outputs;
}

std::vector<std::string> cmd_design(const DesignCommandConfig& cfg, const GlobalOptions& g) {
  const DatasetManifest m = load_manifest(cfg.manifest);
  DesignConfig design;
  design.lambda = cfg.lambda;
  design.stft = make_stft(cfg.stft);
  design.welch.segment_length = cfg.welch_segment;
  design.welch.overlap = cfg.welch_overlap;
  design.num_channels = cfg.channels;
  design.validate();
  ensure_dir(g.output_dir);

  std::vector<MixturePair> pairs(m.entries.size(),
                                 MixturePair{TimeSignal::zeros(1, 1), TimeSignal::zeros(1, 1)});
  parallel_for(m.entries.size(), g.threads, [&](std::size_t i) { pairs[i] = mix_entry(m, i, cfg.snr); });
  log(g, 1, "collecting oracle masking error over " + std::to_string(pairs.size()) + " mixtures");
  const DesignResult result = design_from_pairs(pairs, design, g.threads);

  save_warping(result.warping, g.output_dir / "warping.json");

  const ErrorPsd& psd = result.psd;
  std::vector<double> freq(psd.sigma.size());
  std::vector<double> unit(psd.sigma.size());
  double mean = 0.0;
  for (double s : psd.sigma) mean += s;
  mean /= static_cast<double>(psd.sigma.size());
  for (std::size_t b = 0; b < freq.size(); ++b) {
    freq[b] = psd.frequency_hz(b);
    unit[b] = mean > 0.0 ? psd.sigma[b] / mean : 0.0;
  }
  csv::save_columns(g.output_dir / "psd.csv", {"frequency_hz", "sigma", "sigma_unit_mean"},
                    {freq, psd.sigma, unit});

  const NormalizedWarp warp(result.warping, m.sample_rate / 2.0, cfg.channels);
  std::vector<double> warped(freq.size());
  for (std::size_t b = 0; b < freq.size(); ++b) warped[b] = warp(freq[b]);
  csv::save_columns(g.output_dir / "warping_curve.csv", {"frequency_hz", "warped"},
                    {freq, warped});

  std::vector<std::string> outputs = {"warping.json", "psd.csv", "warping_curve.csv"};
  write_run_record(g, "design",
                   {{"manifest", cfg.manifest.generic_string()},
                    {"stft", stft_json(cfg.stft)},
                    {"lambda", cfg.lambda},
                    {"channels", cfg.channels},
                    {"welch_segment", cfg.welch_segment},
                    {"welch_overlap", cfg.welch_overlap},
                    {"snr_db", optional_json(cfg.snr)}},
                   outputs);
  return outputs;
}

std::vector<std::string> cmd_fbgen(const FbgenConfig& cfg, const GlobalOptions& g) {
  WarpingFunction warping;
  if (cfg.warp == "linear") {
    warping = warping_stft(cfg.slope_b);
  } else if (cfg.warp == "wavelet") {
    warping = warping_wavelet(cfg.base_c, cfg.f_min);
  } else if (cfg.warp == "file") {
    if (cfg.warping_file.empty()) throw ConfigurationError("--warp file needs --warping-file");
    warping = load_warping(cfg.warping_file);
  } else {
    throw ConfigurationError("unknown warp '" + cfg.warp + "' (expected linear, wavelet or file)");
  }
  const FilterbankSpec fb =
      build_filterbank(warping, cfg.channels, cfg.length, cfg.sample_rate, cfg.redundancy);
  log(g, 1, "built " + std::to_string(fb.channel_count()) + " channels, achieved redundancy " +
                csv::format_number(fb.achieved_redundancy()));
  ensure_dir(g.output_dir);
  save_filterbank(fb, g.output_dir / "filterbank.json");

  std::vector<std::string> outputs = {"filterbank.json"};
  write_run_record(g, "fbgen",
                   {{"warp", cfg.warp},
                    {"b", cfg.slope_b},
                    {"c", cfg.base_c},
                    {"f_min", cfg.f_min},
                    {"warping_file", cfg.warping_file.generic_string()},
                    {"channels", cfg.channels},
                    {"length", cfg.length},
                    {"sample_rate", cfg.sample_rate},
                    {"redundancy", cfg.redundancy}},
                   outputs);
  return outputs;
}

std::vector<std::string> cmd_response(const ResponseConfig& cfg, const GlobalOptions& g) {
  const FilterbankSpec fb = load_filterbank(cfg.filterbank);
  ensure_dir(g.output_dir);
  csv::save_response(g.output_dir / "response.csv", export_frequency_response(fb));

  std::vector<double> index, center, bandwidth, decimation, frames;
  for (std::size_t c = 0; c < fb.channel_count(); ++c) {
    const WfbfChannel& ch = fb.channel(c);
    index.push_back(static_cast<double>(c));
    center.push_back(ch.center_hz);
    bandwidth.push_back(ch.bandwidth_hz);
    decimation.push_back(static_cast<double>(ch.decimation));
    frames.push_back(static_cast<double>(fb.num_frames(c)));
  }
  csv::save_columns(g.output_dir / "channels.csv",
                    {"channel", "center_hz", "bandwidth_hz", "decimation", "frames"},
                    {index, center, bandwidth, decimation, frames});

  std::vector<std::string> outputs = {"response.csv", "channels.csv"};
  write_run_record(g, "response", {{"filterbank", cfg.filterbank.generic_string()}}, outputs);
  return outputs;
}

std::vector<std::string> cmd_enhance(const EnhanceConfig& cfg, const GlobalOptions& g) {
  const bool manifest_mode = !cfg.manifest.empty();
  if (manifest_mode == !cfg.input.empty()) {
    throw ConfigurationError("enhance needs exactly one of --manifest or --input");
  }
  const Transform transform =
      cfg.filterbank.empty() ? Transform::stft(make_stft(cfg.stft)) : load_transform(cfg.filterbank);
  const auto estimator = make_estimator(cfg.mask, cfg.profile_frames);
  const MaskSource masks = mask_source(estimator);
  ensure_dir(g.output_dir);

  std::vector<std::string> outputs;
  if (manifest_mode) {
    const DatasetManifest m = load_manifest(cfg.manifest);
    EnhancementOptions opts;
    opts.snr_override = cfg.snr;
    opts.threads = g.threads;
    opts.keep_audio = cfg.write_audio;
    opts.cost_reduction = cost_reduction(cfg.cost);
    const EvalResult r = run_enhancement(m, transform, masks, opts);
    report_failures(g, r);
    if (cfg.write_audio) {
      for (const auto& u : r.utterances) {
        if (!u.enhanced) continue;
        char name[40];
        std::snprintf(name, sizeof(name), "enhanced_%03zu.wav", u.index);
        write_wav(g.output_dir / name, *u.enhanced);
        outputs.emplace_back(name);
      }
    }
    save_text(g.output_dir / "results.csv", results_csv({r}));
    save_text(g.output_dir / "summary.json", summary_json({r}));
    outputs.insert(outputs.end(), {"results.csv", "summary.json"});
    const EvalSummary s = r.summary();
    log(g, 0, transform.label() + " / " + masks.name() + ": SDR " +
                  csv::format_number(s.mean_input_sdr_db) + " -> " +
                  csv::format_number(s.mean_output_sdr_db) + " dB");
  } else {
    const TimeSignal noisy = read_wav(cfg.input);
    std::optional<TimeSignal> clean;
    if (!cfg.clean.empty()) clean = read_wav(cfg.clean);
    if (masks.is_oracle() && !clean) {
      throw ConfigurationError("--mask oracle with --input needs --clean");
    }
    const Enhanced result = enhance_signal(noisy, transform, masks, clean ? &*clean : nullptr);
    const TimeSignal& enhanced = result.signal;
    write_wav(g.output_dir / "enhanced.wav", enhanced);
    csv::save_matrix(g.output_dir / "mask.csv", result.mask.values());
    csv::save_matrix(g.output_dir / "features.csv",
                     log_magnitude(transform.analyze(noisy)).values);
    outputs.insert(outputs.end(), {"enhanced.wav", "mask.csv", "features.csv"});
    if (clean) {
      const json scores = {{"input_sdr_db", sdr(*clean, noisy)},
                           {"output_sdr_db", sdr(*clean, enhanced)}};
      save_text(g.output_dir / "summary.json", scores.dump(2) + "\n");
      outputs.push_back("summary.json");
    }
  }

  write_run_record(g, "enhance",
                   {{"manifest", cfg.manifest.generic_string()},
                    {"input", cfg.input.generic_string()},
                    {"clean", cfg.clean.generic_string()},
                    {"filterbank", cfg.filterbank.generic_string()},
                    {"stft", stft_json(cfg.stft)},
                    {"mask", cfg.mask},
                    {"profile_frames", cfg.profile_frames},
                    {"snr_db", optional_json(cfg.snr)},
                    {"cost", cfg.cost},
                    {"write_audio", cfg.write_audio}},
                   outputs);
  return outputs;
}

std::vector<std::string> cmd_eval(const EvalConfig& cfg, const GlobalOptions& g) {
  const DatasetManifest m = load_manifest(cfg.manifest);
  std::vector<Transform> transforms;
  if (cfg.include_stft) transforms.push_back(Transform::stft(make_stft(cfg.stft)));
  for (const auto& path : cfg.filterbanks) transforms.push_back(load_transform(path));
  if (transforms.empty()) throw ConfigurationError("eval: no transforms selected");
  if (cfg.snrs.empty()) throw ConfigurationError("eval: no SNR conditions");
  const auto estimator = make_estimator(cfg.mask, cfg.profile_frames);
  const MaskSource masks = mask_source(estimator);
  ensure_dir(g.output_dir);

  std::vector<EvalResult> results;
  for (double snr : cfg.snrs) {
    for (const auto& t : transforms) {
      EnhancementOptions opts;
      opts.snr_override = snr;
      opts.threads = g.threads;
      opts.cost_reduction = cost_reduction(cfg.cost);
      log(g, 1, "evaluating " + t.label() + " at " + csv::format_number(snr) + " dB");
      results.push_back(run_enhancement(m, t, masks, opts));
      report_failures(g, results.back());
    }
  }
  save_text(g.output_dir / "results.csv", results_csv(results));
  save_text(g.output_dir / "summary.json", summary_json(results));
  save_text(g.output_dir / "table.csv", condition_table_csv(results));
  if (g.verbosity >= 0) std::cout << condition_table_csv(results);

  std::vector<std::string> outputs = {"results.csv", "summary.json", "table.csv"};
  write_run_record(g, "eval",
                   {{"manifest", cfg.manifest.generic_string()},
                    {"filterbanks", paths_json(cfg.filterbanks)},
                    {"include_stft", cfg.include_stft},
                    {"stft", stft_json(cfg.stft)},
                    {"snrs", cfg.snrs},
                    {"mask", cfg.mask},
                    {"profile_frames", cfg.profile_frames},
                    {"cost", cfg.cost}},
                   outputs);
  return outputs;
}

std::vector<std::string> cmd_variance(const VarianceConfig& cfg, const GlobalOptions& g) {
  const DatasetManifest m = load_manifest(cfg.manifest);
  std::vector<Transform> transforms;
  transforms.push_back(Transform::stft(make_stft(cfg.stft)));
  for (const auto& path : cfg.filterbanks) transforms.push_back(load_transform(path));
  ensure_dir(g.output_dir);

  std::vector<MixturePair> pairs(m.entries.size(),
                                 MixturePair{TimeSignal::zeros(1, 1), TimeSignal::zeros(1, 1)});
  parallel_for(m.entries.size(), g.threads, [&](std::size_t i) { pairs[i] = mix_entry(m, i, cfg.snr); });

  std::ostringstream table;
  table << "transform,channel,center_hz,variance,weight\n";
  json ratios = json::array();
  for (const auto& t : transforms) {
    std::vector<TfCoefficients> errors(pairs.size());
    parallel_for(pairs.size(), g.threads, [&](std::size_t i) {
      errors[i] = oracle_error(t.analyze(pairs[i].clean), t.analyze(pairs[i].noisy));
    });
    const BandVariance v = band_error_variance(errors);
    const FrequencyWeights w = compute_weights(errors);
    for (std::size_t c = 0; c < v.variance.size(); ++c) {
      table << t.label() << ',' << c << ',' << csv::format_number(v.center_hz[c]) << ','
            << csv::format_number(v.variance[c]) << ',' << csv::format_number(w.weights[c])
            << '\n';
    }
    const double ratio = v.max_min_ratio();
    ratios.push_back({{"transform", t.label()},
                      {"input_dim", t.input_dim()},
                      {"max_min_ratio", std::isfinite(ratio) ? json(ratio) : json(nullptr)}});
    log(g, 0, t.label() + ": max/min error variance " + csv::format_number(ratio));
  }
  save_text(g.output_dir / "band_variance.csv", table.str());
  save_text(g.output_dir / "variance_summary.json", json{{"transforms", ratios}}.dump(2) + "\n");

  std::vector<std::string> outputs = {"band_variance.csv", "variance_summary.json"};
  write_run_record(g, "variance",
                   {{"manifest", cfg.manifest.generic_string()},
                    {"filterbanks", paths_json(cfg.filterbanks)},
                    {"stft", stft_json(cfg.stft)},
                    {"snr_db", optional_json(cfg.snr)}},
                   outputs);
  return outputs;
}

}  // namespace warpfb::cli
