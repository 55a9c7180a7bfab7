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

#include "tgraphon/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "tgraphon/error.hpp"

namespace tgraphon {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format double");
  }
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& values) {
  out << "n=" << values.rows() << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) {
        out << ',';
      }
      out << format_double(values(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0) {
    throw ConfigError("matrix CSV must start with an 'n=<n>' header");
  }
  const double parsed = parse_double(std::string_view(line).substr(2));
  const int n = static_cast<int>(parsed);
  if (n <= 0 || static_cast<double>(n) != parsed) {
    throw ConfigError("bad resolution header: " + line);
  }
  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw ConfigError("matrix CSV ended after " + std::to_string(i) + " rows");
    }
    std::string_view rest(line);
    int j = 0;
    while (true) {
      const auto comma = rest.find(',');
      if (j >= n) {
        throw ConfigError("too many columns in row " + std::to_string(i));
      }
      values(i, j++) = parse_double(rest.substr(0, comma));
      if (comma == std::string_view::npos) {
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (j != n) {
      throw ConfigError("row " + std::to_string(i) + " has " + std::to_string(j) + " columns, expected " +
                        std::to_string(n));
    }
  }
  return values;
}

void write_step_graphon_csv(std::ostream& out, const StepGraphon& f) { write_matrix_csv(out, f.values()); }

StepGraphon read_step_graphon_csv(std::istream& in) { return StepGraphon(read_matrix_csv(in)); }

void save_step_graphon(const std::filesystem::path& path, const StepGraphon& f) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
  write_step_graphon_csv(out, f);
}

StepGraphon load_step_graphon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read " + path.string());
  }
  return read_step_graphon_csv(in);
}

std::filesystem::path save_temporal_graphon(const std::filesystem::path& dir, const std::string& stem,
                                            const TemporalStepGraphon& path) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["resolution"] = path.resolution();
  manifest["breakpoints"] = std::vector<double>(path.grid().breakpoints().begin(), path.grid().breakpoints().end());
  auto slabs = nlohmann::json::array();
  for (std::size_t m = 0; m < path.slab_count(); ++m) {
    const std::string name = stem + "_slab_" + std::to_string(m) + ".csv";
    save_step_graphon(dir / name, path.slab(m));
    slabs.push_back(name);
  }
  manifest["slabs"] = slabs;
  const auto manifest_path = dir / (stem + ".json");
  std::ofstream out(manifest_path);
  out << manifest.dump(2) << '\n';
  return manifest_path;
}

TemporalStepGraphon load_temporal_graphon(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw ConfigError("cannot read " + manifest_path.string());
  }
  try {
    const auto manifest = nlohmann::json::parse(in);
    TimeGrid grid(manifest.at("breakpoints").get<std::vector<double>>());
    std::vector<StepGraphon> slabs;
    for (const auto& name : manifest.at("slabs")) {
      slabs.push_back(load_step_graphon(manifest_path.parent_path() / name.get<std::string>()));
    }
    TemporalStepGraphon out(std::move(grid), std::move(slabs));
    if (manifest.contains("resolution") && manifest["resolution"].get<int>() != out.resolution()) {
      throw ConfigError("manifest resolution disagrees with slab files");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(manifest_path.string() + ": " + e.what());
  }
}

}  // namespace tgraphon
