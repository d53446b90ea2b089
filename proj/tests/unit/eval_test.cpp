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

#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "warpfb/errors.hpp"
#include "warpfb/eval.hpp"
#include "warpfb/fixtures.hpp"
#include "warpfb/wav.hpp"

namespace warpfb {
namespace {

TEST(Sdr, DocumentedValues) {
  const TimeSignal s = testing::random_signal(1000, 1);
  EXPECT_EQ(sdr(s, s), kSdrCapDb);
  EXPECT_NEAR(sdr(s, TimeSignal::zeros(1000, 16000)), 0.0, 1e-12);
  EXPECT_NEAR(sdr(s, s.scaled(-1.0)), -10.0 * std::log10(4.0), 1e-12);

  // A circular shift of s has exactly the energy of s.
  std::vector<double> plus_error(s.data());
  for (std::size_t i = 0; i < plus_error.size(); ++i) plus_error[i] += s[(i + 500) % 1000];
  EXPECT_NEAR(sdr(s, TimeSignal(plus_error, 16000)), 0.0, 1e-12);
}

TEST(Sdr, JointScaleInvariance) {
  const TimeSignal s = testing::random_signal(2000, 2);
  const TimeSignal est(testing::random_samples(2000, 3, 0.3), 16000);
  std::vector<double> noisy_est(s.data());
  for (std::size_t i = 0; i < noisy_est.size(); ++i) noisy_est[i] += est[i];
  const TimeSignal e(noisy_est, 16000);
  const double base = sdr(s, e);
  for (double a : {-3.0, 1e-3, 7.5, 1e4}) EXPECT_NEAR(sdr(s.scaled(a), e.scaled(a)), base, 1e-9);
}

TEST(Sdr, Errors) {
  EXPECT_THROW(sdr(TimeSignal::zeros(10, 16000), TimeSignal::zeros(10, 16000)), InvalidInput);
  EXPECT_THROW(sdr(testing::random_signal(10, 1), testing::random_signal(11, 1)), InvalidInput);
}

class FixtureSet : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("evalfix");
    FixtureOptions opts;
    opts.count = 6;
    opts.duration_s = 1.0;
    opts.snrs = {0.0};
    manifest_ = new DatasetManifest(synth_fixtures(opts, dir_->path()));
  }
  static void TearDownTestSuite() {
    delete manifest_;
    delete dir_;
  }
  static const DatasetManifest& manifest() { return *manifest_; }
  static const testing::TempDir& dir() { return *dir_; }

  static std::vector<Transform> transforms() {
    const std::size_t n = 16000;
    return {Transform::stft(StftParams::hann(512, 256)),
            Transform::wfbf(std::make_shared<FilterbankSpec>(
                                build_filterbank(warping_stft(1.0), 64, n, 16000, 1.5)),
                            "WFBF-linear"),
            Transform::wfbf(std::make_shared<FilterbankSpec>(
                                build_filterbank(warping_wavelet(2.0, 100.0), 64, n, 16000, 1.5)),
                            "WFBF-wavelet")};
  }

 private:
  static inline testing::TempDir* dir_ = nullptr;
  static inline DatasetManifest* manifest_ = nullptr;
};

TEST_F(FixtureSet, ManifestDescribesFiles) {
  ASSERT_EQ(manifest().entries.size(), 6u);
  const DatasetManifest loaded = load_manifest(dir().path() / "manifest.json");
  ASSERT_EQ(loaded.entries.size(), 6u);
  EXPECT_EQ(loaded.sample_rate, 16000);
  for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
    EXPECT_EQ(loaded.entries[i].seed, manifest().entries[i].seed);
    EXPECT_EQ(loaded.entries[i].snr_db, 0.0);
    EXPECT_TRUE(std::filesystem::exists(loaded.resolve(loaded.entries[i].clean_path)));
  }
  EXPECT_EQ(manifest_to_json(loaded), manifest_to_json(manifest_from_json(manifest_to_json(loaded),
                                                                          loaded.base_dir)));
}

TEST_F(FixtureSet, SameSeedGivesIdenticalBytes) {
  testing::TempDir other("evalfix_again");
  FixtureOptions opts;
  opts.count = 6;
  opts.duration_s = 1.0;
  synth_fixtures(opts, other.path());
  for (const auto& entry : std::filesystem::directory_iterator(dir().path())) {
    const auto name = entry.path().filename();
    EXPECT_EQ(testing::file_bytes(entry.path()), testing::file_bytes(other.path() / name))
        << name;
  }
}

TEST_F(FixtureSet, CleanEnergyIsConcentratedBelowFourKilohertz) {
  for (const auto& e : manifest().entries) {
    const TimeSignal clean = read_wav(manifest().resolve(e.clean_path));
    const Spectrum spec = dft_forward(clean);
    double low = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k <= spec.size() / 2; ++k) {
      const double p = std::norm(spec.bins[k]);
      total += p;
      if (static_cast<double>(k) * 16000.0 / static_cast<double>(spec.size()) < 4000.0) low += p;
    }
    EXPECT_GT(low / total, 0.9);
  }
}

TEST_F(FixtureSet, MixEntryHitsRequestedSnr) {
  for (double snr : {-6.0, 0.0, 6.0}) {
    const MixturePair p = mix_entry(manifest(), 1, snr);
    std::vector<double> noise(p.noisy.data());
    for (std::size_t i = 0; i < noise.size(); ++i) noise[i] -= p.clean[i];
    EXPECT_NEAR(snr_db(p.clean, TimeSignal(noise, 16000)), snr, 1e-9);
  }
  EXPECT_THROW(mix_entry(manifest(), 99), InvalidInput);
}

TEST_F(FixtureSet, UnitMaskIsTransparentInEveryTransform) {
  const UnitMaskEstimator ones;
  for (const auto& t : transforms()) {
    const EvalResult r = run_enhancement(manifest(), t, MaskSource::from(ones));
    ASSERT_EQ(r.utterances.size(), manifest().entries.size());
    for (const auto& u : r.utterances) {
      ASSERT_TRUE(u.ok()) << u.error;
      EXPECT_LT(std::abs(u.improvement_db()), 0.01) << t.label() << " entry " << u.index;
    }
    EXPECT_EQ(r.condition.transform, t.label());
    EXPECT_EQ(r.condition.estimator, "ones");
  }
}

TEST_F(FixtureSet, OracleNeverLowersSdr) {
  for (const auto& t : transforms()) {
    for (double snr : {-6.0, 0.0, 6.0}) {
      EnhancementOptions opts;
      opts.snr_override = snr;
      const EvalResult r = run_enhancement(manifest(), t, MaskSource::oracle(), opts);
      for (const auto& u : r.utterances) {
        ASSERT_TRUE(u.ok()) << u.error;
        EXPECT_GT(u.output_sdr_db, u.input_sdr_db) << t.label() << " snr " << snr;
        EXPECT_NEAR(u.input_sdr_db, snr, 1e-6);
      }
      ASSERT_TRUE(r.condition.snr_db.has_value());
      EXPECT_EQ(*r.condition.snr_db, snr);
    }
  }
}

TEST_F(FixtureSet, RunsAreDeterministicAcrossThreadCounts) {
  const auto t = transforms()[2];
  const auto wiener = wiener_baseline_estimator(10);
  EnhancementOptions one;
  EnhancementOptions four;
  four.threads = 4;
  const auto a = run_enhancement(manifest(), t, MaskSource::from(*wiener), one);
  const auto b = run_enhancement(manifest(), t, MaskSource::from(*wiener), four);
  std::ostringstream ca;
  std::ostringstream cb;
  write_results_csv(ca, {a});
  write_results_csv(cb, {b});
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(summary_json({a}), summary_json({b}));
}

TEST_F(FixtureSet, SummaryAggregatesSuccessfulEntries) {
  const auto r = run_enhancement(manifest(), transforms()[0], MaskSource::oracle());
  const EvalSummary s = r.summary();
  EXPECT_EQ(s.succeeded, 6u);
  EXPECT_EQ(s.failed, 0u);
  double mean = 0.0;
  for (const auto& u : r.utterances) mean += u.improvement_db();
  EXPECT_NEAR(s.mean_improvement_db, mean / 6.0, 1e-12);
  EXPECT_GE(s.std_improvement_db, 0.0);

  const auto doc = nlohmann::json::parse(summary_json({r}));
  const auto& cond = doc.at("conditions").at(0);
  EXPECT_EQ(cond.at("transform"), "STFT");
  EXPECT_EQ(cond.at("estimator"), "oracle");
  EXPECT_EQ(cond.at("num_channels"), 257);
  EXPECT_EQ(cond.at("succeeded"), 6);
}

TEST_F(FixtureSet, EntryFailuresAreRecorded) {
  DatasetManifest broken = manifest();
  broken.entries[2].clean_path = "does_not_exist.wav";
  const auto r = run_enhancement(broken, transforms()[0], MaskSource::oracle());
  ASSERT_EQ(r.utterances.size(), 6u);
  EXPECT_FALSE(r.utterances[2].ok());
  EXPECT_TRUE(r.utterances[1].ok());
  EXPECT_EQ(r.summary().failed, 1u);

  for (auto& e : broken.entries) e.clean_path = "does_not_exist.wav";
  EXPECT_THROW(run_enhancement(broken, transforms()[0], MaskSource::oracle()), Error);
}

TEST(Manifest, MissingFileIsRejectedAtLoad) {
  testing::TempDir dir("manifest");
  DatasetManifest m;
  m.entries.push_back({"clean.wav", "noise.wav", 0.0, 1});
  save_manifest(m, dir / "manifest.json");
  EXPECT_THROW(load_manifest(dir / "manifest.json"), InvalidInput);
  EXPECT_THROW(manifest_from_json("{\"entries\": 3}", dir.path()), InvalidInput);
}

TEST(Manifest, SampleRateMismatchIsRejected) {
  testing::TempDir dir("manifest_rate");
  write_wav(dir / "clean.wav", testing::random_signal(800, 1, 8000));
  write_wav(dir / "noise.wav", testing::random_signal(800, 2, 8000));
  DatasetManifest m;
  m.entries.push_back({"clean.wav", "noise.wav", 0.0, 1});
  save_manifest(m, dir / "manifest.json");
  EXPECT_THROW(load_manifest(dir / "manifest.json"), InvalidInput);
}

TEST(Fixtures, PinkNoiseSlopesDownward) {
  FixtureRng rng(5);
  const TimeSignal pink = make_noise(NoiseKind::pink, rng, 16000, 64000);
  const ErrorPsd psd = welch_psd(pink, WelchConfig{});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = 255.0;
  for (std::size_t b = 1; b < 256; ++b) {
    const double x = std::log(psd.frequency_hz(b));
    const double y = std::log(psd.sigma[b]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_LT(slope, 0.0);
  EXPECT_NEAR(slope, -1.0, 0.2);
}

TEST(Fixtures, RngIsReproducibleAndUniform) {
  FixtureRng a(7);
  FixtureRng b(7);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    mean += u;
  }
  EXPECT_NEAR(mean / 10000.0, 0.5, 0.02);
}

TEST(Fixtures, InvalidOptions) {
  testing::TempDir dir("fixopts");
  FixtureOptions opts;
  opts.count = 0;
  EXPECT_THROW(synth_fixtures(opts, dir.path()), InvalidInput);
  opts.count = 1;
  std::ofstream(dir / "blocker") << "x";
  EXPECT_THROW(synth_fixtures(opts, dir / "blocker" / "sub"), IoError);
}

}  // namespace
}  // namespace warpfb
