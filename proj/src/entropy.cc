// Copyright 2026 The Authors.
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

#include "fair_ksub/entropy.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include "fair_ksub/error.h"
#include "fair_ksub/io.h"

namespace fair_ksub {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitComma(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    fields.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

void AppendDouble(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

RawReadings ParseReadingsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  RawReadings raw;
  bool have_header = false;
  std::unordered_map<std::string, int> location_index;
  std::unordered_map<std::string, int> timestamp_index;

  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = SplitComma(line);
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "timestamp" ||
          fields[1] != "location") {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(line_no) +
                        ": expected header timestamp,location,<measures...>");
      }
      for (size_t c = 2; c < fields.size(); ++c) {
        raw.measure_names.emplace_back(fields[c]);
      }
      have_header = true;
      continue;
    }
    const int k = raw.measures();
    if (static_cast<int>(fields.size()) != 2 + k) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(line_no) +
                                         ": expected " + std::to_string(2 + k) +
                                         " fields, got " +
                                         std::to_string(fields.size()));
    }
    const std::string ts(fields[0]);
    const std::string loc(fields[1]);
    if (loc.empty()) {
      throw Error(ErrorCode::kParse,
                  "row " + std::to_string(line_no) + ": empty location");
    }
    auto [loc_it, new_loc] =
        location_index.emplace(loc, static_cast<int>(raw.location_labels.size()));
    if (new_loc) {
      raw.location_labels.push_back(loc);
      for (auto& row : raw.values) row.resize(raw.location_labels.size() * k);
    }
    auto [ts_it, new_ts] =
        timestamp_index.emplace(ts, static_cast<int>(raw.timestamps.size()));
    if (new_ts) {
      raw.timestamps.push_back(ts);
      raw.values.emplace_back(raw.location_labels.size() * k);
    }
    auto& row = raw.values[ts_it->second];
    for (int m = 0; m < k; ++m) {
      const std::string_view cell = fields[2 + m];
      if (cell.empty()) continue;
      double v = 0.0;
      const char* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw Error(ErrorCode::kParse,
                    "row " + std::to_string(line_no) + ", column " +
                        std::to_string(3 + m) + ": not a number \"" +
                        std::string(cell) + "\"");
      }
      row[static_cast<size_t>(loc_it->second) * k + m] = v;
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::kDegenerateData, "readings file is empty");
  }
  if (raw.values.empty()) {
    throw Error(ErrorCode::kDegenerateData, "readings file has no records");
  }
  return raw;
}

std::string SerializeReadingsCsv(const RawReadings& raw) {
  std::string out = "timestamp,location";
  for (const auto& name : raw.measure_names) out += "," + name;
  out += '\n';
  const int k = raw.measures();
  for (size_t r = 0; r < raw.values.size(); ++r) {
    for (int loc = 0; loc < raw.locations(); ++loc) {
      bool any = false;
      for (int m = 0; m < k; ++m) {
        any |= raw.values[r][static_cast<size_t>(loc) * k + m].has_value();
      }
      if (!any) continue;
      out += raw.timestamps[r];
      out += ',';
      out += raw.location_labels[loc];
      for (int m = 0; m < k; ++m) {
        out += ',';
        const auto& v = raw.values[r][static_cast<size_t>(loc) * k + m];
        if (v) AppendDouble(out, *v);
      }
      out += '\n';
    }
  }
  return out;
}

ReadingsTable Discretize(const RawReadings& raw,
                         const std::vector<double>& bin_widths) {
  const int k = raw.measures();
  if (static_cast<int>(bin_widths.size()) != k) {
    throw Error(ErrorCode::kInvalidParameter,
                "expected " + std::to_string(k) + " bin widths, got " +
                    std::to_string(bin_widths.size()));
  }
  for (double w : bin_widths) {
    if (!(w > 0.0)) {
      throw Error(ErrorCode::kInvalidParameter, "bin widths must be positive");
    }
  }
  ReadingsTable table;
  table.locations = raw.locations();
  table.measures = k;
  table.bin_widths = bin_widths;
  table.measure_names = raw.measure_names;
  table.location_labels = raw.location_labels;
  table.bin_offsets.assign(k, 0);

  std::vector<std::vector<int64_t>> raw_bins(raw.values.size());
  std::vector<int64_t> min_bin(k, 0);
  for (size_t r = 0; r < raw.values.size(); ++r) {
    raw_bins[r].assign(raw.values[r].size(), 0);
    for (size_t cell = 0; cell < raw.values[r].size(); ++cell) {
      const auto& v = raw.values[r][cell];
      if (!v) continue;
      const int m = static_cast<int>(cell % k);
      const auto b = static_cast<int64_t>(std::floor(*v / bin_widths[m]));
      raw_bins[r][cell] = b;
      min_bin[m] = std::min(min_bin[m], b);
    }
  }
  for (int m = 0; m < k; ++m) {
    table.bin_offsets[m] = static_cast<int>(-min_bin[m]);
  }
  table.rows.resize(raw.values.size());
  for (size_t r = 0; r < raw.values.size(); ++r) {
    table.rows[r].assign(raw.values[r].size(), kMissingBin);
    for (size_t cell = 0; cell < raw.values[r].size(); ++cell) {
      if (!raw.values[r][cell]) continue;
      const int m = static_cast<int>(cell % k);
      table.rows[r][cell] =
          static_cast<int>(raw_bins[r][cell] + table.bin_offsets[m]);
    }
  }
  return table;
}

ReadingsTable LoadReadings(const std::string& path,
                           const std::vector<double>& bin_widths,
                           uint64_t max_bytes) {
  return Discretize(ParseReadingsCsv(ReadFileCapped(path, max_bytes)),
                    bin_widths);
}

RawReadings GenReadings(const ReadingsGenParams& params, uint64_t seed) {
  if (params.locations < 1 || params.measures < 1 || params.timestamps < 1 ||
      params.missing_rate < 0.0 || params.missing_rate >= 1.0) {
    throw Error(ErrorCode::kInvalidParameter, "invalid readings generator params");
  }
  // Base level and swing per measure; the first three mimic temperature
  // (C), humidity (%) and light (lux).
  auto profile = [](int m) -> std::pair<double, double> {
    switch (m) {
      case 0: return {21.0, 5.0};
      case 1: return {38.0, 10.0};
      case 2: return {300.0, 280.0};
      default: return {50.0, 20.0};
    }
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  RawReadings raw;
  for (int m = 0; m < params.measures; ++m) {
    static const char* kNames[] = {"temperature", "humidity", "light"};
    raw.measure_names.push_back(m < 3 ? kNames[m] : "measure" + std::to_string(m + 1));
  }
  for (int loc = 0; loc < params.locations; ++loc) {
    raw.location_labels.push_back(std::to_string(loc + 1));
  }
  const int cells = params.locations * params.measures;
  std::vector<double> gain(cells), shift(cells), phase(cells);
  for (int c = 0; c < cells; ++c) {
    gain[c] = 0.5 + unit(rng);
    shift[c] = unit(rng) - 0.5;
    phase[c] = 0.6 * (unit(rng) - 0.5);
  }
  constexpr double kPeriod = 48.0;
  for (int t = 0; t < params.timestamps; ++t) {
    raw.timestamps.push_back(std::to_string(t));
    std::vector<std::optional<double>> row(cells);
    for (int loc = 0; loc < params.locations; ++loc) {
      for (int m = 0; m < params.measures; ++m) {
        const int c = loc * params.measures + m;
        const double draw = unit(rng);
        const double eps = noise(rng);
        if (draw < params.missing_rate) continue;
        const auto [base, swing] = profile(m);
        const double cycle =
            std::sin(2.0 * std::numbers::pi * t / kPeriod + phase[c] + m);
        row[c] = base + swing * (gain[c] * cycle + shift[c] + 0.25 * eps);
      }
    }
    raw.values.push_back(std::move(row));
  }
  return raw;
}

EntropyOracle::EntropyOracle(ReadingsTable table) : table_(std::move(table)) {
  if (table_.locations < 1 || table_.measures < 1) {
    throw Error(ErrorCode::kDegenerateData, "readings table is empty");
  }
}

double EntropyOracle::Evaluate(const KAssignment& s) {
  CheckDimensions(*this, s);
  if (s.empty()) return 0.0;
  std::vector<size_t> cells;
  for (ElementId e = 0; e < s.n(); ++e) {
    if (s.at(e) == kUnassigned) continue;
    cells.push_back(static_cast<size_t>(e) * table_.measures + (s.at(e) - 1));
  }
  std::map<std::vector<int>, int64_t> histogram;
  std::vector<int> key(cells.size());
  int64_t kept = 0;
  for (const auto& row : table_.rows) {
    bool missing = false;
    for (size_t j = 0; j < cells.size(); ++j) {
      key[j] = row[cells[j]];
      if (key[j] == kMissingBin) {
        missing = true;
        break;
      }
    }
    if (missing) continue;
    ++histogram[key];
    ++kept;
  }
  if (kept == 0) {
    throw Error(ErrorCode::kDegenerateData,
                "every row has a missing value for selection " + s.ToString());
  }
  double h = 0.0;
  const double total = static_cast<double>(kept);
  for (const auto& [bins, count] : histogram) {
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double EntropyEval(const ReadingsTable& table, const KAssignment& s) {
  EntropyOracle oracle(table);
  return oracle.Evaluate(s);
}

}  // namespace fair_ksub
