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

#include "warpfb/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace warpfb::fft {
namespace {

enum class Kind { c2c_forward, c2c_backward, r2c, c2r };

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], BufferDeleter> alloc(std::size_t n) {
  void* p = fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], BufferDeleter>(static_cast<T*>(p));
}

// FFTW's planner is not thread-safe; execution with the new-array interface
// is, as long as buffers share the alignment of the planning buffers. All
// buffers come from fftw_malloc, so that holds.
class PlanCache {
 public:
  fftw_plan get(Kind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second.get();

    const int len = static_cast<int>(n);
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::c2c_forward:
      case Kind::c2c_backward: {
        auto in = alloc<fftw_complex>(n);
        auto out = alloc<fftw_complex>(n);
        plan = fftw_plan_dft_1d(len, in.get(), out.get(),
                                kind == Kind::c2c_forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
        break;
      }
      case Kind::r2c: {
        auto in = alloc<double>(n);
        auto out = alloc<fftw_complex>(n / 2 + 1);
        plan = fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
        break;
      }
      case Kind::c2r: {
        auto in = alloc<fftw_complex>(n / 2 + 1);
        auto out = alloc<double>(n);
        plan = fftw_plan_dft_c2r_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
        break;
      }
    }
    auto [it, inserted] = plans_.emplace(key, PlanPtr(plan));
    return it->second.get();
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, std::size_t>, PlanPtr> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<std::complex<double>> c2c(std::span<const std::complex<double>> in,
                                      Kind kind) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  fftw_plan plan = cache().get(kind, n);
  auto buf_in = alloc<fftw_complex>(n);
  auto buf_out = alloc<fftw_complex>(n);
  std::memcpy(buf_in.get(), in.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, buf_in.get(), buf_out.get());
  std::vector<std::complex<double>> out(n);
  std::memcpy(static_cast<void*>(out.data()), buf_out.get(), sizeof(fftw_complex) * n);
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in) {
  return c2c(in, Kind::c2c_forward);
}

std::vector<std::complex<double>> backward(std::span<const std::complex<double>> in) {
  return c2c(in, Kind::c2c_backward);
}

std::vector<std::complex<double>> forward_real(std::span<const double> in) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  fftw_plan plan = cache().get(Kind::r2c, n);
  auto buf_in = alloc<double>(n);
  auto buf_out = alloc<fftw_complex>(n / 2 + 1);
  std::memcpy(buf_in.get(), in.data(), sizeof(double) * n);
  fftw_execute_dft_r2c(plan, buf_in.get(), buf_out.get());
  std::vector<std::complex<double>> out(n / 2 + 1);
  std::memcpy(static_cast<void*>(out.data()), buf_out.get(), sizeof(fftw_complex) * out.size());
  return out;
}

std::vector<double> backward_real(std::span<const std::complex<double>> half,
                                  std::size_t n) {
  if (n == 0) return {};
  const std::size_t bins = n / 2 + 1;
  fftw_plan plan = cache().get(Kind::c2r, n);
  auto buf_in = alloc<fftw_complex>(bins);
  auto buf_out = alloc<double>(n);
  // c2r overwrites its input, so always work on a private copy.
  std::memset(buf_in.get(), 0, sizeof(fftw_complex) * bins);
  std::memcpy(buf_in.get(), half.data(),
              sizeof(fftw_complex) * std::min(bins, half.size()));
  fftw_execute_dft_c2r(plan, buf_in.get(), buf_out.get());
  return std::vector<double>(buf_out.get(), buf_out.get() + n);
}

}  // namespace warpfb::fft
