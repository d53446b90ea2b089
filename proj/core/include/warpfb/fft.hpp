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

// Unnormalized FFT helpers shared by the transforms. Sign convention:
// forward uses exp(-2 pi i f t / n), backward exp(+2 pi i f t / n); neither
// scales. Safe to call concurrently.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace warpfb::fft {

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in);
std::vector<std::complex<double>> backward(std::span<const std::complex<double>> in);

// Real input of length n -> n/2 + 1 non-negative frequency bins.
std::vector<std::complex<double>> forward_real(std::span<const double> in);

// n/2 + 1 bins -> real output of length n. Bins are treated as one half of a
// Hermitian spectrum: imaginary parts of the DC and (even n) Nyquist bins are
// ignored.
std::vector<double> backward_real(std::span<const std::complex<double>> half,
                                  std::size_t n);

}  // namespace warpfb::fft
