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

#include <random>

#include <benchmark/benchmark.h>

#include "warpfb/stft.hpp"
#include "warpfb/warp_design.hpp"
#include "warpfb/wfbf.hpp"

namespace {

warpfb::TimeSignal noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return warpfb::TimeSignal(std::move(x), 16000);
}

void BM_StftAnalyze(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const auto params = warpfb::StftParams::hann(512, 256);
  for (auto _ : state) benchmark::DoNotOptimize(warpfb::stft_analyze(x, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StftAnalyze)->Arg(16000)->Arg(32000);

void BM_StftSynthesize(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const auto params = warpfb::StftParams::hann(512, 256);
  const auto coeffs = warpfb::stft_analyze(x, params);
  for (auto _ : state) benchmark::DoNotOptimize(warpfb::stft_synthesize(coeffs, params, x.size()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StftSynthesize)->Arg(16000)->Arg(32000);

void BM_BuildFilterbank(benchmark::State& state) {
  const auto warping = warpfb::warping_wavelet(2.0, 100.0);
  const auto channels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(warpfb::build_filterbank(warping, channels, 32000, 16000, 1.5));
  }
}
BENCHMARK(BM_BuildFilterbank)->Arg(64)->Arg(128);

void BM_WfbfAnalyze(benchmark::State& state) {
  const auto channels = static_cast<std::size_t>(state.range(0));
  const auto fb = warpfb::build_filterbank(warpfb::warping_wavelet(2.0, 100.0), channels, 32000,
                                           16000, 1.5);
  const auto x = noise(32000);
  for (auto _ : state) benchmark::DoNotOptimize(warpfb::wfbf_analyze(x, fb));
  state.SetItemsProcessed(state.iterations() * 32000);
}
BENCHMARK(BM_WfbfAnalyze)->Arg(64)->Arg(128);

void BM_WfbfSynthesize(benchmark::State& state) {
  const auto channels = static_cast<std::size_t>(state.range(0));
  const auto fb = warpfb::build_filterbank(warpfb::warping_wavelet(2.0, 100.0), channels, 32000,
                                           16000, 1.5);
  const auto coeffs = warpfb::wfbf_analyze(noise(32000), fb);
  for (auto _ : state) benchmark::DoNotOptimize(warpfb::wfbf_synthesize(coeffs, fb));
  state.SetItemsProcessed(state.iterations() * 32000);
}
BENCHMARK(BM_WfbfSynthesize)->Arg(64)->Arg(128);

void BM_WelchPsd(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(warpfb::welch_psd(x, warpfb::WelchConfig{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WelchPsd)->Arg(320000);

}  // namespace

BENCHMARK_MAIN();
