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

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "warpfb/errors.hpp"

namespace {

using namespace warpfb::cli;

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

void add_stft_flags(CLI::App* cmd, StftFlags& f) {
  cmd->add_option("--fft-size", f.fft_size, "STFT frame length in samples")->capture_default_str();
  cmd->add_option("--hop", f.hop, "STFT hop in samples")->capture_default_str();
  cmd->add_option("--window", f.window, "Analysis window")
      ->check(CLI::IsMember({"hann", "rectangular"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpfb: warped filterbank frames for T-F masking speech enhancement"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  global.threads = default_threads();
  int verbose = 0;
  bool quiet = false;
  app.add_option("--seed", global.seed, "Seed for synthetic data")->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads (default: $WARPFB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "More log output (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Only errors");
  app.add_option("-o,--output-dir", global.output_dir, "Directory for all outputs")
      ->capture_default_str();

  SynthConfig synth;
  auto* c_synth = app.add_subcommand("synth", "Generate speech-like fixtures and a manifest");
  c_synth->add_option("--count", synth.count, "Number of utterances")->capture_default_str();
  c_synth->add_option("--duration", synth.duration_s, "Seconds per utterance")->capture_default_str();
  c_synth->add_option("--sample-rate", synth.sample_rate, "Hz")->capture_default_str();
  c_synth->add_option("--snrs", synth.snrs, "SNRs in dB, cycled over entries")->delimiter(',');

  DesignCommandConfig design;
  auto* c_design = app.add_subcommand("design", "Learn a warping from oracle masking error");
  c_design->add_option("--manifest", design.manifest, "Dataset manifest")->required();
  add_stft_flags(c_design, design.stft);
  c_design->add_option("--lambda", design.lambda, "Flattening constant added to sigma")
      ->capture_default_str();
  c_design->add_option("--channels", design.channels, "Channel count of the warped axis")
      ->capture_default_str();
  c_design->add_option("--welch-segment", design.welch_segment, "Welch segment length")
      ->capture_default_str();
  c_design->add_option("--welch-overlap", design.welch_overlap, "Welch overlap fraction")
      ->capture_default_str();
  c_design->add_option("--snr", design.snr, "Override every entry's SNR (dB)");

  FbgenConfig fbgen;
  auto* c_fbgen = app.add_subcommand("fbgen", "Build a warped filterbank frame");
  c_fbgen->add_option("--warp", fbgen.warp, "Warping kind")
      ->check(CLI::IsMember({"linear", "wavelet", "file"}))
      ->capture_default_str();
  c_fbgen->add_option("--b", fbgen.slope_b, "Linear warp divisor")->capture_default_str();
  c_fbgen->add_option("--c", fbgen.base_c, "Wavelet logarithm base")->capture_default_str();
  c_fbgen->add_option("--f-min", fbgen.f_min, "Wavelet linear splice point (Hz)")
      ->capture_default_str();
  c_fbgen->add_option("--warping-file", fbgen.warping_file, "warping.json for --warp file");
  c_fbgen->add_option("--channels", fbgen.channels, "Channel count")->capture_default_str();
  c_fbgen->add_option("--length", fbgen.length, "Signal length in samples")->capture_default_str();
  c_fbgen->add_option("--sample-rate", fbgen.sample_rate, "Hz")->capture_default_str();
  c_fbgen->add_option("--redundancy", fbgen.redundancy, "Per-channel oversampling")
      ->capture_default_str();

  ResponseConfig response;
  auto* c_response = app.add_subcommand("response", "Export filterbank frequency responses");
  c_response->add_option("--filterbank", response.filterbank, "filterbank.json")->required();

  EnhanceConfig enhance;
  auto* c_enhance = app.add_subcommand("enhance", "Mask and resynthesize noisy speech");
  c_enhance->add_option("--manifest", enhance.manifest, "Dataset manifest");
  c_enhance->add_option("--input", enhance.input, "Single noisy WAV");
  c_enhance->add_option("--clean", enhance.clean, "Clean reference for --input");
  c_enhance->add_option("--filterbank", enhance.filterbank, "filterbank.json (default: STFT)");
  add_stft_flags(c_enhance, enhance.stft);
  c_enhance->add_option("--mask", enhance.mask, "Mask source")
      ->check(CLI::IsMember({"oracle", "ones", "wiener"}))
      ->capture_default_str();
  c_enhance->add_option("--profile-frames", enhance.profile_frames, "Wiener noise frames")
      ->capture_default_str();
  c_enhance->add_option("--snr", enhance.snr, "Override every entry's SNR (dB)");
  c_enhance->add_option("--cost", enhance.cost, "Mask cost reduction")
      ->check(CLI::IsMember({"mean", "sum"}))
      ->capture_default_str();
  c_enhance->add_flag("!--no-audio", enhance.write_audio, "Skip writing enhanced WAVs");

  EvalConfig eval;
  auto* c_eval = app.add_subcommand("eval", "Transform x SNR comparison table");
  c_eval->add_option("--manifest", eval.manifest, "Dataset manifest")->required();
  c_eval->add_option("--filterbank", eval.filterbanks, "filterbank.json (repeatable)");
  c_eval->add_flag("!--no-stft", eval.include_stft, "Leave the STFT row out");
  add_stft_flags(c_eval, eval.stft);
  c_eval->add_option("--snrs", eval.snrs, "Input SNRs in dB")->delimiter(',')->capture_default_str();
  c_eval->add_option("--mask", eval.mask, "Mask source")
      ->check(CLI::IsMember({"oracle", "ones", "wiener"}))
      ->capture_default_str();
  c_eval->add_option("--profile-frames", eval.profile_frames, "Wiener noise frames")
      ->capture_default_str();
  c_eval->add_option("--cost", eval.cost, "Mask cost reduction")
      ->check(CLI::IsMember({"mean", "sum"}))
      ->capture_default_str();

  VarianceConfig variance;
  auto* c_variance = app.add_subcommand("variance", "Per-channel oracle error variance");
  c_variance->add_option("--manifest", variance.manifest, "Dataset manifest")->required();
  c_variance->add_option("--filterbank", variance.filterbanks, "filterbank.json (repeatable)");
  add_stft_flags(c_variance, variance.stft);
  c_variance->add_option("--snr", variance.snr, "Override every entry's SNR (dB)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  global.verbosity = quiet ? -1 : verbose;

  try {
    if (*c_synth) cmd_synth(synth, global);
    else if (*c_design) cmd_design(design, global);
    else if (*c_fbgen) cmd_fbgen(fbgen, global);
    else if (*c_response) cmd_response(response, global);
    else if (*c_enhance) cmd_enhance(enhance, global);
    else if (*c_eval) cmd_eval(eval, global);
    else if (*c_variance) cmd_variance(variance, global);
  } catch (const warpfb::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
