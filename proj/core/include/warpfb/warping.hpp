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

#include <optional>
#include <string>
#include <vector>

namespace warpfb {

enum class WarpKind { linear, logarithmic, tabulated };

std::string to_string(WarpKind kind);
WarpKind warp_kind_from_string(const std::string& name);

struct Breakpoint {
  double hz;
  double warped;

  bool operator==(const Breakpoint&) const = default;
};

/// Strictly increasing map from frequency (Hz) to a warped coordinate.
///
///  - linear:      phi(f) = f / b
///  - logarithmic: phi(f) = log_c(f) for f >= f_min; below f_min the map
///                 continues as the tangent line at f_min, so phi is C^1 and
///                 finite at 0.
///  - tabulated:   piecewise-linear interpolation through breakpoints,
///                 extended linearly past both ends with the end slopes.
class WarpingFunction {
 public:
  /// Identity (linear, b = 1).
  WarpingFunction() = default;

  static WarpingFunction linear(double b);
  static WarpingFunction logarithmic(double base, double f_min);
  static WarpingFunction tabulated(std::vector<Breakpoint> breakpoints);

  WarpKind kind() const { return kind_; }
  double evaluate(double hz) const;
  double inverse(double warped) const;

  /// 1/b for the linear kind.
  double slope() const { return slope_; }
  double base() const { return base_; }
  double f_min() const { return f_min_; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }

  // Provenance metadata carried through serialization for learned warps.
  std::optional<double> lambda;
  std::string normalization;

  bool operator==(const WarpingFunction&) const = default;

 private:
  WarpKind kind_ = WarpKind::linear;
  double slope_ = 1.0;
  double base_ = 2.0;
  double f_min_ = 0.0;
  std::vector<Breakpoint> breakpoints_;
};

}  // namespace warpfb
