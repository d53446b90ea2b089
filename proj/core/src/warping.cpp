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

#include "warpfb/warping.hpp"

#include <algorithm>
#include <cmath>

#include "warpfb/errors.hpp"

namespace warpfb {

std::string to_string(WarpKind kind) {
  switch (kind) {
    case WarpKind::linear: return "linear";
    case WarpKind::logarithmic: return "logarithmic";
    case WarpKind::tabulated: return "tabulated";
  }
  return "unknown";
}

WarpKind warp_kind_from_string(const std::string& name) {
  if (name == "linear") return WarpKind::linear;
  if (name == "logarithmic" || name == "wavelet" || name == "log") return WarpKind::logarithmic;
  if (name == "tabulated" || name == "learned") return WarpKind::tabulated;
  throw ConfigurationError("unknown warping kind '" + name + "'");
}

WarpingFunction WarpingFunction::linear(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw ConfigurationError("linear warping: b must be positive");
  }
  WarpingFunction w;
  w.kind_ = WarpKind::linear;
  w.slope_ = 1.0 / b;
  return w;
}

WarpingFunction WarpingFunction::logarithmic(double base, double f_min) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw ConfigurationError("logarithmic warping: base must exceed 1");
  }
  if (!(f_min > 0.0) || !std::isfinite(f_min)) {
    throw ConfigurationError("logarithmic warping: f_min must be positive");
  }
  WarpingFunction w;
  w.kind_ = WarpKind::logarithmic;
  w.base_ = base;
  w.f_min_ = f_min;
  return w;
}

WarpingFunction WarpingFunction::tabulated(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) {
    throw ConfigurationError("tabulated warping: need at least two breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i].hz) || !std::isfinite(breakpoints[i].warped)) {
      throw ConfigurationError("tabulated warping: non-finite breakpoint");
    }
    if (i > 0 && !(breakpoints[i].hz > breakpoints[i - 1].hz &&
                   breakpoints[i].warped > breakpoints[i - 1].warped)) {
      throw ConfigurationError("tabulated warping: breakpoints must increase strictly in "
                               "both coordinates (index " + std::to_string(i) + ")");
    }
  }
  WarpingFunction w;
  w.kind_ = WarpKind::tabulated;
  w.breakpoints_ = std::move(breakpoints);
  return w;
}

double WarpingFunction::evaluate(double hz) const {
  switch (kind_) {
    case WarpKind::linear:
      return hz * slope_;
    case WarpKind::logarithmic: {
      const double ln_c = std::log(base_);
      if (hz >= f_min_) return std::log(hz) / ln_c;
      return std::log(f_min_) / ln_c + (hz - f_min_) / (f_min_ * ln_c);
    }
    case WarpKind::tabulated: {
      const auto& bp = breakpoints_;
      auto it = std::upper_bound(bp.begin(), bp.end(), hz,
                                 [](double v, const Breakpoint& b) { return v < b.hz; });
      std::size_t hi = static_cast<std::size_t>(it - bp.begin());
      hi = std::clamp<std::size_t>(hi, 1, bp.size() - 1);
      const Breakpoint& a = bp[hi - 1];
      const Breakpoint& b = bp[hi];
      return a.warped + (hz - a.hz) * (b.warped - a.warped) / (b.hz - a.hz);
    }
  }
  return 0.0;
}

double WarpingFunction::inverse(double warped) const {
  switch (kind_) {
    case WarpKind::linear:
      return warped / slope_;
    case WarpKind::logarithmic: {
      const double ln_c = std::log(base_);
      const double at_min = std::log(f_min_) / ln_c;
      if (warped >= at_min) return std::exp(warped * ln_c);
      return f_min_ + (warped - at_min) * f_min_ * ln_c;
    }
    case WarpKind::tabulated: {
      const auto& bp = breakpoints_;
      auto it = std::upper_bound(bp.begin(), bp.end(), warped,
                                 [](double v, const Breakpoint& b) { return v < b.warped; });
      std::size_t hi = static_cast<std::size_t>(it - bp.begin());
      hi = std::clamp<std::size_t>(hi, 1, bp.size() - 1);
      const Breakpoint& a = bp[hi - 1];
      const Breakpoint& b = bp[hi];
      return a.hz + (warped - a.warped) * (b.hz - a.hz) / (b.warped - a.warped);
    }
  }
  return 0.0;
}

}  // namespace warpfb
