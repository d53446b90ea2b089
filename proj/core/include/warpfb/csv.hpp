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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "warpfb/wfbf.hpp"

namespace warpfb::csv {

/// Shortest round-trip decimal representation.
std::string format_number(double value);

/// Writes equal-length columns under a header row.
void write_columns(std::ostream& out, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& columns);

/// One CSV row per matrix row; rows may differ in length (multirate layouts).
void write_matrix(std::ostream& out, const std::vector<std::vector<double>>& rows);

/// Column 0: frequency in Hz; column c + 1: |g_c| on that bin.
void write_response(std::ostream& out, const ResponseTable& table);

void save_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& columns);
void save_matrix(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows);
void save_response(const std::filesystem::path& path, const ResponseTable& table);

/// Reads a numeric CSV, skipping a non-numeric header line if present.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path);

}  // namespace warpfb::csv
