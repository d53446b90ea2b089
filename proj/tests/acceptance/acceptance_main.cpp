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

// Acceptance suite. Runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.hpp"
#include "warpfb/eval.hpp"
#include "warpfb/features.hpp"
#include "warpfb/fixtures.hpp"
#include "warpfb/masking.hpp"
#include "warpfb/stft.hpp"
#include "warpfb/warp_design.hpp"
#include "warpfb/wfbf.hpp"

namespace fs = std::filesystem;
using namespace warpfb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double relative_error(const TimeSignal& a, const TimeSignal& b) {
  double num = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) num += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(num / b.energy());
}

TimeSignal white(std::size_t n, std::uint64_t seed, int fs = 16000) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return TimeSignal(std::move(x), fs);
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Shared inputs: the 20-utterance synthetic set at 0 dB and the warping
/// learned from it.
struct World {
  fs::path root;
  DatasetManifest manifest;
  std::vector<MixturePair> pairs;
  DesignResult design;
  std::size_t length = 0;
  std::shared_ptr<const FilterbankSpec> learned;
  std::vector<Transform> transforms;
};

World build_world() {
  World w;
  w.root = fs::temp_directory_path() / ("warpfb_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(w.root);
  FixtureOptions opts;
  opts.count = 20;
  opts.seed = 42;
  opts.snrs = {0.0};
  w.manifest = synth_fixtures(opts, w.root / "data");
  for (std::size_t i = 0; i < w.manifest.entries.size(); ++i) {
    w.pairs.push_back(mix_entry(w.manifest, i));
  }
  w.length = w.pairs.front().clean.size();
  DesignConfig cfg;
  cfg.lambda = 0.1;
  cfg.num_channels = 64;
  w.design = design_from_pairs(w.pairs, cfg);
  w.learned = std::make_shared<FilterbankSpec>(
      build_filterbank(w.design.warping, 64, w.length, 16000, 1.5));
  w.transforms = {
      Transform::stft(StftParams::hann(512, 256)),
      Transform::wfbf(std::make_shared<FilterbankSpec>(
                          build_filterbank(warping_stft(1.0), 64, w.length, 16000, 1.5)),
                      "WFBF-linear"),
      Transform::wfbf(std::make_shared<FilterbankSpec>(
                          build_filterbank(warping_wavelet(2.0, 100.0), 64, w.length, 16000, 1.5)),
                      "WFBF-wavelet"),
      Transform::wfbf(w.learned, "WFBF-learned")};
  return w;
}

double max_deviation_from_linear(const WarpingFunction& warping, std::size_t channels) {
  const NormalizedWarp nu(warping, 8000.0, channels);
  double dev = 0.0;
  for (int i = 0; i <= 8000; ++i) {
    const double f = static_cast<double>(i);
    dev = std::max(dev, std::abs(nu(f) - static_cast<double>(channels) * f / 8000.0));
  }
  return dev;
}

Outcome stft_reconstruction() {
  const auto params = StftParams::hann(512, 256);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const TimeSignal x = white(16000, 1000 + s);
    worst = std::max(worst, relative_error(stft_synthesize(stft_analyze(x, params), params, x.size()), x));
  }
  return {worst <= 1e-10, fmt("worst relative error %.2e over 20 signals", worst)};
}

Outcome wfbf_reconstruction(const World& w) {
  const std::vector<std::pair<const char*, WarpingFunction>> warps = {
      {"linear", warping_stft(1.0)},
      {"wavelet", warping_wavelet(2.0, 100.0)},
      {"learned", w.design.warping}};
  double worst = 0.0;
  int cases = 0;
  for (const auto& [name, warping] : warps) {
    for (std::size_t channels : {64, 128}) {
      for (double r : {1.5, 3.0}) {
        const auto fb = build_filterbank(warping, channels, 16000, 16000, r);
        const TimeSignal x = white(16000, 2000 + static_cast<std::uint64_t>(cases));
        worst = std::max(worst, relative_error(wfbf_synthesize(wfbf_analyze(x, fb), fb), x));
        ++cases;
      }
    }
  }
  return {worst <= 1e-8, fmt("worst relative error %.2e over %.0f filterbanks", worst, cases)};
}

Outcome stft_recovery() {
  const auto fb = build_filterbank(warping_stft(1.0), 64, 32000, 16000, 1.5);
  const double spacing = fb.channel(1).center_hz - fb.channel(0).center_hz;
  double spacing_dev = 0.0;
  for (std::size_t c = 1; c < fb.channel_count(); ++c) {
    const double d = fb.channel(c).center_hz - fb.channel(c - 1).center_hz;
    spacing_dev = std::max(spacing_dev, std::abs(d - spacing) / spacing);
  }
  // DC and Nyquist channels are half-bands; all interior channels must match.
  const auto& ref = fb.channel(1);
  double bandwidth_dev = 0.0;
  double response_dev = 0.0;
  bool same_shape = true;
  for (std::size_t c = 1; c + 1 < fb.channel_count(); ++c) {
    const auto& ch = fb.channel(c);
    bandwidth_dev = std::max(bandwidth_dev, std::abs(ch.bandwidth_hz - ref.bandwidth_hz) / ref.bandwidth_hz);
    same_shape = same_shape && ch.response.size() == ref.response.size() &&
                 ch.decimation == ref.decimation;
    for (std::size_t i = 0; same_shape && i < ch.response.size(); ++i) {
      response_dev = std::max(response_dev, std::abs(ch.response[i] - ref.response[i]));
    }
  }
  return {spacing_dev <= 1e-9 && bandwidth_dev <= 1e-9 && same_shape,
          fmt("spacing deviation %.2e, bandwidth deviation %.2e, response deviation %.2e",
              spacing_dev, bandwidth_dev, response_dev)};
}

Outcome variance_flattening(const World& w) {
  const auto params = StftParams::hann(512, 256);
  std::vector<TfCoefficients> stft_errors;
  std::vector<TfCoefficients> wfbf_errors;
  for (const auto& p : w.pairs) {
    stft_errors.push_back(oracle_error(stft_analyze(p.clean, params), stft_analyze(p.noisy, params)));
    wfbf_errors.push_back(oracle_error(wfbf_analyze(p.clean, *w.learned), wfbf_analyze(p.noisy, *w.learned)));
  }
  const double stft_ratio = band_error_variance(stft_errors).max_min_ratio();
  const double wfbf_ratio = band_error_variance(wfbf_errors).max_min_ratio();
  const double factor = stft_ratio / wfbf_ratio;
  return {factor >= 3.0, fmt("max/min variance STFT %.3g, learned WFBF %.3g, factor %.3g",
                             stft_ratio, wfbf_ratio, factor)};
}

Outcome lambda_monotonicity(const World& w) {
  std::vector<double> devs;
  for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
    devs.push_back(max_deviation_from_linear(design_warping(w.design.psd, lambda, 64), 64));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < devs.size(); ++i) decreasing = decreasing && devs[i] < devs[i - 1];
  return {decreasing, fmt("max deviation %.3g, %.3g, %.3g", devs[0], devs[1], devs[2]) +
                          fmt(", %.3g channels", devs[3])};
}

Outcome psm_optimality() {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> d;
  int perturbation_failures = 0;
  double worst_grid_gap = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex s(d(rng), d(rng));
    const Complex x(d(rng), d(rng));
    const double g = psm_value(s, x);
    auto err = [&](double gg) { return std::norm(gg * x - s); };
    if (err(g) > err(g + 0.01) || err(g) > err(g - 0.01)) ++perturbation_failures;
    // |Re(S conj X)| / |X|^2 <= |S| / |X|, so the minimizer lies in this range.
    const double bound = std::abs(s) / std::abs(x) + 1e-3;
    double best_g = -bound;
    double best = err(best_g);
    for (double gg = -bound; gg <= bound; gg += 1e-3) {
      const double e = err(gg);
      if (e < best) {
        best = e;
        best_g = gg;
      }
    }
    worst_grid_gap = std::max(worst_grid_gap, std::abs(best_g - g));
  }
  return {perturbation_failures == 0 && worst_grid_gap <= 1e-3,
          fmt("%.0f perturbation violations, worst grid gap %.2e", perturbation_failures,
              worst_grid_gap)};
}

Outcome weighted_mse(const World& w) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  const auto params = StftParams::hann(512, 256);
  double worst_unit = 0.0;
  for (int t = 0; t < 10; ++t) {
    const TimeSignal a = white(8000, rng());
    const TimeSignal b = white(8000, rng());
    const auto s = stft_analyze(a, params);
    const auto x = stft_analyze(b, params);
    const Mask g = psm_oracle(s, x);
    const FrequencyWeights ones{std::vector<double>(s.num_channels(), 1.0)};
    const double plain = cost_mse(g, x, s);
    worst_unit = std::max(worst_unit, std::abs(cost_weighted_mse(g, x, s, ones) - plain) / plain);
  }

  std::vector<TfCoefficients> clean;
  std::vector<TfCoefficients> noisy;
  std::vector<TfCoefficients> errors;
  for (const auto& p : w.pairs) {
    clean.push_back(stft_analyze(p.clean, params));
    noisy.push_back(stft_analyze(p.noisy, params));
    errors.push_back(oracle_error(clean.back(), noisy.back()));
  }
  const FrequencyWeights weights = compute_weights(errors);
  std::vector<double> per_band(clean.front().num_channels(), 0.0);
  std::size_t frames = 0;
  for (std::size_t u = 0; u < clean.size(); ++u) {
    const auto bands = weighted_band_costs(psm_oracle(clean[u], noisy[u]), noisy[u], clean[u], weights);
    for (std::size_t c = 0; c < bands.size(); ++c) per_band[c] += bands[c];
    frames += clean[u].num_frames(0);
  }
  double mean = 0.0;
  for (auto& v : per_band) {
    v /= static_cast<double>(frames);
    mean += v;
  }
  mean /= static_cast<double>(per_band.size());
  double spread = 0.0;
  for (double v : per_band) spread = std::max(spread, std::abs(v / mean - 1.0));
  return {worst_unit <= 1e-12 && spread <= 0.1,
          fmt("unit-weight relative gap %.2e, band contributions within %.2f%% of their mean",
              worst_unit, 100.0 * spread)};
}

Outcome end_to_end_identity(const World& w) {
  const UnitMaskEstimator ones;
  double worst = 0.0;
  std::size_t failures = 0;
  for (const auto& t : w.transforms) {
    const auto r = run_enhancement(w.manifest, t, MaskSource::from(ones));
    for (const auto& u : r.utterances) {
      if (!u.ok()) {
        ++failures;
        continue;
      }
      worst = std::max(worst, std::abs(u.improvement_db()));
    }
  }
  return {failures == 0 && worst < 0.01,
          fmt("worst |SDR change| %.2e dB across %.0f transforms, %.0f failed entries", worst,
              static_cast<double>(w.transforms.size()), static_cast<double>(failures))};
}

Outcome oracle_ordering(const World& w) {
  bool every = true;
  std::string detail;
  double weakest_mean = std::numeric_limits<double>::infinity();
  for (const auto& t : w.transforms) {
    for (double snr : {-6.0, 0.0, 6.0}) {
      EnhancementOptions opts;
      opts.snr_override = snr;
      const auto r = run_enhancement(w.manifest, t, MaskSource::oracle(), opts);
      for (const auto& u : r.utterances) every = every && u.ok() && u.output_sdr_db > u.input_sdr_db;
      if (snr == 0.0) {
        const double mean = r.summary().mean_improvement_db;
        weakest_mean = std::min(weakest_mean, mean);
        detail += t.label() + fmt(" %+.2f dB; ", mean);
      }
    }
  }
  return {every && weakest_mean >= 3.0,
          std::string(every ? "every utterance improved" : "some utterance did not improve") +
              "; mean improvement at 0 dB: " + detail};
}

Outcome welch_correctness() {
  WelchConfig cfg;
  const std::size_t segments = 2000;
  const TimeSignal x = white(cfg.segment_length + (segments - 1) * cfg.hop(), 8);
  const ErrorPsd psd = welch_psd(x, cfg);
  // One-sided density: interior bins carry twice the two-sided level.
  double worst = 0.0;
  for (std::size_t b = 0; b < psd.sigma.size(); ++b) {
    const double expected = (b == 0 || b + 1 == psd.sigma.size() ? 1.0 : 2.0) / 16000.0;
    worst = std::max(worst, std::abs(psd.sigma[b] / expected - 1.0));
  }
  double variance = 0.0;
  for (double v : x.samples()) variance += v * v;
  variance /= static_cast<double>(x.size());
  const double power_gap = std::abs(psd.total_power() / variance - 1.0);
  return {psd.num_segments >= 200 && worst <= 0.2 && power_gap <= 0.05,
          fmt("%.0f segments, worst bin deviation %.1f%%, power gap %.2f%%",
              static_cast<double>(psd.num_segments), 100.0 * worst, 100.0 * power_gap)};
}

Outcome mel_pseudo_inverse() {
  double worst = 0.0;
  for (std::size_t bands : {64, 128}) {
    const MelTransform mel(bands, 257, 16000);
    const auto& m = mel.matrix();
    worst = std::max(worst, (m * mel.pseudo_inverse() * m - m).norm() / m.norm());
  }
  return {worst <= 1e-8, fmt("worst Moore-Penrose residual %.2e", worst)};
}

Outcome determinism(const World& w) {
  cli::GlobalOptions g;
  g.output_dir = w.root / "determinism";
  g.verbosity = -1;
  cli::DesignCommandConfig design;
  design.manifest = w.root / "data" / "manifest.json";
  const auto names = cli::cmd_design(design, g);
  std::vector<std::string> first;
  for (const auto& n : names) first.push_back(file_bytes(g.output_dir / n));
  const auto again = cli::cmd_design(design, g);
  bool same = again == names;
  for (std::size_t i = 0; same && i < names.size(); ++i) {
    same = file_bytes(g.output_dir / names[i]) == first[i];
  }

  const auto wiener = wiener_baseline_estimator(10);
  auto render = [&](const Transform& t) {
    const auto r = run_enhancement(w.manifest, t, MaskSource::from(*wiener));
    std::ostringstream csv;
    write_results_csv(csv, {r});
    return csv.str() + summary_json({r});
  };
  bool enhance_same = true;
  for (const auto& t : w.transforms) enhance_same = enhance_same && render(t) == render(t);
  return {same && enhance_same,
          std::string("design outputs ") + (same ? "identical" : "DIFFER") +
              ", enhancement CSV/JSON " + (enhance_same ? "identical" : "DIFFER")};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  int failures = 0;
  auto run = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& check) {
    const auto start = clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    if (limit_s > 0.0 && secs > limit_s) {
      o.pass = false;
      o.detail += fmt(" (runtime limit %.0f s exceeded)", limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %-32s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  const auto setup_start = clock::now();
  World world;
  try {
    world = build_world();
  } catch (const std::exception& e) {
    std::printf("[FAIL] setup: %s\n", e.what());
    return 1;
  }
  const double setup_s = std::chrono::duration<double>(clock::now() - setup_start).count();
  std::printf("fixtures and learned warping ready [%.2f s]\n", setup_s);

  run(1, "STFT perfect reconstruction", 5.0, stft_reconstruction);
  run(2, "WFBF perfect reconstruction", 30.0, [&] { return wfbf_reconstruction(world); });
  run(3, "STFT recovery by linear warp", 0.0, stft_recovery);
  // The flattening budget also covers fixture synthesis and warp design.
  run(4, "error-variance flattening", 60.0 - setup_s, [&] { return variance_flattening(world); });
  run(5, "lambda monotonicity", 0.0, [&] { return lambda_monotonicity(world); });
  run(6, "PSM optimality", 0.0, psm_optimality);
  run(7, "weighted-MSE consistency", 0.0, [&] { return weighted_mse(world); });
  run(8, "end-to-end identity", 0.0, [&] { return end_to_end_identity(world); });
  run(9, "oracle enhancement ordering", 0.0, [&] { return oracle_ordering(world); });
  run(10, "Welch correctness", 0.0, welch_correctness);
  run(11, "mel pseudo-inverse", 0.0, mel_pseudo_inverse);
  run(12, "determinism", 0.0, [&] { return determinism(world); });

  std::error_code ec;
  fs::remove_all(world.root, ec);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
