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

#include "warpfb/filterbank_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "warpfb/errors.hpp"

namespace warpfb {

using nlohmann::json;

namespace {

json warping_json(const WarpingFunction& w) {
  json j;
  j["kind"] = to_string(w.kind());
  switch (w.kind()) {
    case WarpKind::linear:
      j["slope"] = w.slope();
      break;
    case WarpKind::logarithmic:
      j["base"] = w.base();
      j["f_min"] = w.f_min();
      break;
    case WarpKind::tabulated: {
      json bps = json::array();
      for (const Breakpoint& b : w.breakpoints()) bps.push_back({b.hz, b.warped});
      j["breakpoints"] = std::move(bps);
      break;
    }
  }
  j["lambda"] = w.lambda ? json(*w.lambda) : json(nullptr);
  if (!w.normalization.empty()) j["normalization"] = w.normalization;
  return j;
}

WarpingFunction parse_warping(const json& j) {
  const WarpKind kind = warp_kind_from_string(j.at("kind").get<std::string>());
  WarpingFunction w;
  switch (kind) {
    case WarpKind::linear:
      w = WarpingFunction::linear(1.0 / j.at("slope").get<double>());
      break;
    case WarpKind::logarithmic:
      w = WarpingFunction::logarithmic(j.at("base").get<double>(), j.at("f_min").get<double>());
      break;
    case WarpKind::tabulated: {
      std::vector<Breakpoint> bps;
      for (const auto& p : j.at("breakpoints")) {
        bps.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      }
      w = WarpingFunction::tabulated(std::move(bps));
      break;
    }
  }
  if (j.contains("lambda") && !j["lambda"].is_null()) w.lambda = j["lambda"].get<double>();
  if (j.contains("normalization")) w.normalization = j["normalization"].get<std::string>();
  return w;
}

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": malformed JSON: " + e.what());
  }
}

void check_version(const json& j, const char* what) {
  if (j.contains("version") && j["version"].get<int>() != kFilterbankFormatVersion) {
    throw InvalidInput(std::string(what) + ": unsupported format version " +
                       std::to_string(j["version"].get<int>()));
  }
}

}  // namespace

std::string warping_to_json(const WarpingFunction& warping) {
  json j = warping_json(warping);
  j["version"] = kFilterbankFormatVersion;
  return j.dump(2) + "\n";
}

WarpingFunction warping_from_json(const std::string& text) {
  const json j = parse_text(text, "warping");
  check_version(j, "warping");
  try {
    return parse_warping(j.contains("warping") ? j["warping"] : j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("warping: ") + e.what());
  }
}

std::string filterbank_to_json(const FilterbankSpec& fb) {
  json j;
  j["version"] = kFilterbankFormatVersion;
  j["sample_rate"] = fb.sample_rate();
  j["signal_length"] = fb.signal_length();
  j["num_channels"] = fb.num_channels();
  j["redundancy"] = fb.redundancy();
  j["warping"] = warping_json(fb.warping());
  json channels = json::array();
  for (const WfbfChannel& ch : fb.channels()) {
    channels.push_back({{"center_hz", ch.center_hz},
                        {"bandwidth_hz", ch.bandwidth_hz},
                        {"decimation", ch.decimation},
                        {"support", {ch.first_bin, ch.last_bin}},
                        {"response_values", ch.response}});
  }
  j["channels"] = std::move(channels);
  return j.dump() + "\n";
}

FilterbankSpec filterbank_from_json(const std::string& text) {
  const json j = parse_text(text, "filterbank");
  check_version(j, "filterbank");
  try {
    std::vector<WfbfChannel> channels;
    for (const auto& c : j.at("channels")) {
      WfbfChannel ch;
      ch.center_hz = c.at("center_hz").get<double>();
      ch.bandwidth_hz = c.value("bandwidth_hz", 0.0);
      ch.decimation = c.at("decimation").get<std::size_t>();
      ch.first_bin = c.at("support").at(0).get<long>();
      ch.last_bin = c.at("support").at(1).get<long>();
      ch.response = c.at("response_values").get<std::vector<double>>();
      channels.push_back(std::move(ch));
    }
    return FilterbankSpec(std::move(channels), j.at("signal_length").get<std::size_t>(),
                          j.at("sample_rate").get<int>(), parse_warping(j.at("warping")),
                          j.at("num_channels").get<std::size_t>(),
                          j.at("redundancy").get<double>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("filterbank: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void save_warping(const WarpingFunction& warping, const std::filesystem::path& path) {
  write_text_file(path, warping_to_json(warping));
}

WarpingFunction load_warping(const std::filesystem::path& path) {
  return warping_from_json(read_text_file(path));
}

void save_filterbank(const FilterbankSpec& fb, const std::filesystem::path& path) {
  write_text_file(path, filterbank_to_json(fb));
}

FilterbankSpec load_filterbank(const std::filesystem::path& path) {
  return filterbank_from_json(read_text_file(path));
}

}  // namespace warpfb
