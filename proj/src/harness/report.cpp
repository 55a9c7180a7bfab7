// Copyright 2026 The tgraphon Authors
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


#include <chrono>
#include <ctime>
#include <fstream>
#include <cmath>
#include <sstream>

#include "tgraphon/error.hpp"
#include "tgraphon/harness.hpp"
#include "tgraphon/io.hpp"

namespace tgraphon {

namespace {

using nlohmann::ordered_json;

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) {
    return "";
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_number_integer()) {
    return v.dump();
  }
  if (v.is_number()) {
    return format_double(v.get<double>());
  }
  const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (const char c : text) {
    quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return quoted + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  out << contents;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<ordered_json>& rows) {
  if (rows.empty()) {
    return "";
  }
  std::string out;
  std::vector<std::string> keys;
  for (const auto& [key, value] : rows.front().items()) {
    keys.push_back(key);
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    out += (k > 0 ? "," : "") + keys[k];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != keys.size()) {
      throw std::logic_error("report rows must share one set of columns");
    }
    for (std::size_t k = 0; k < keys.size(); ++k) {
      out += (k > 0 ? "," : "") + csv_cell(row.at(keys[k]));
    }
    out += '\n';
  }
  return out;
}

std::string rows_to_jsonl(const std::vector<ordered_json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump() + '\n';
  }
  return out;
}

void write_report(const ExperimentReport& report, const ExperimentConfig& config, const std::filesystem::path& dir,
                  RowFormat format, double wall_seconds) {
  std::filesystem::create_directories(dir / "plotdata");
  write_file(dir / "config.snapshot", config.settings.dump(2) + '\n');
  if (format == RowFormat::csv) {
    write_file(dir / "rows.csv", rows_to_csv(report.rows));
  } else {
    write_file(dir / "rows.jsonl", rows_to_jsonl(report.rows));
  }

  ordered_json summary;
  summary["experiment"] = to_string(report.kind);
  summary["config_hash"] = report.config_hash;
  summary["seed"] = report.seed;
  summary["code_version"] = kCodeVersion;
  summary["passed"] = report.passed();
  summary["verdicts"] = ordered_json::array();
  for (const auto& v : report.verdicts) {
    summary["verdicts"].push_back({{"rule", v.rule}, {"passed", v.passed}, {"detail", v.detail}});
  }
  summary["results"] = report.summary;
  write_file(dir / "summary.json", summary.dump(2) + '\n');

  ordered_json metadata;
  metadata["timestamp_utc"] = utc_timestamp();
  metadata["wall_seconds"] = wall_seconds;
  metadata["threads"] = config.parallel.resolved();
  metadata["code_version"] = kCodeVersion;
  metadata["row_format"] = format == RowFormat::csv ? "csv" : "jsonl";
  write_file(dir / "metadata.json", metadata.dump(2) + '\n');

  for (const auto& plot : report.plots) {
    std::string body;
    for (std::size_t k = 0; k < plot.columns.size(); ++k) {
      body += (k > 0 ? "," : "") + plot.columns[k];
    }
    body += '\n';
    for (const auto& row : plot.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        body += (k > 0 ? "," : "") + (std::isfinite(row[k]) ? format_double(row[k]) : std::string());
      }
      body += '\n';
    }
    write_file(dir / "plotdata" / (plot.name + ".csv"), body);
  }
  for (const auto& [name, contents] : report.attachments) {
    write_file(dir / name, contents);
  }
}

}  // namespace tgraphon
