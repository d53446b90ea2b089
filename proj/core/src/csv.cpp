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

#include "warpfb/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "warpfb/errors.hpp"

namespace warpfb::csv {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

void write_columns(std::ostream& out, const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& columns) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_number(columns[c][r]);
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_response(std::ostream& out, const ResponseTable& table) {
  out << "frequency_hz";
  for (std::size_t c = 0; c < table.magnitude.size(); ++c) out << ",ch" << c;
  out << '\n';
  for (std::size_t f = 0; f < table.frequency_hz.size(); ++f) {
    out << format_number(table.frequency_hz[f]);
    for (const auto& ch : table.magnitude) out << ',' << format_number(ch[f]);
    out << '\n';
  }
}

void save_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& columns) {
  auto out = open_out(path);
  write_columns(out, header, columns);
}

void save_matrix(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  write_matrix(out, rows);
}

void save_response(const std::filesystem::path& path, const ResponseTable& table) {
  auto out = open_out(path);
  write_response(out, table);
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw InvalidInput("non-numeric CSV row in " + path.string());
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace warpfb::csv
