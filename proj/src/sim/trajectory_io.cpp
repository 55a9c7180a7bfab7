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


#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tgraphon/error.hpp"
#include "tgraphon/io.hpp"
#include "tgraphon/simulation.hpp"

namespace tgraphon {

void write_trajectories_csv(std::ostream& out, const EdgeTrajectorySet& trajectories) {
  out << "i,j,initial,jumps\n";
  const int n = trajectories.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out << i << ',' << j << ',' << trajectories.initial_state(i, j) << ',';
      bool first = true;
      for (const double t : trajectories.jumps(i, j)) {
        out << (first ? "" : ";") << format_double(t);
        first = false;
      }
      out << '\n';
    }
  }
}

EdgeTrajectorySet read_trajectories_csv(std::istream& in, double a, std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line) || line != "i,j,initial,jumps") {
    throw ConfigError("trajectory CSV must start with the header i,j,initial,jumps");
  }
  struct Row {
    int i;
    int j;
    int initial;
    std::vector<double> jumps;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    std::string i_text;
    std::string j_text;
    std::string s_text;
    std::string jumps_text;
    if (!std::getline(fields, i_text, ',') || !std::getline(fields, j_text, ',') ||
        !std::getline(fields, s_text, ',')) {
      throw ConfigError("malformed trajectory row: " + line);
    }
    std::getline(fields, jumps_text);
    Row row{static_cast<int>(parse_double(i_text)), static_cast<int>(parse_double(j_text)),
            static_cast<int>(parse_double(s_text)), {}};
    std::istringstream times(jumps_text);
    std::string t;
    while (std::getline(times, t, ';')) {
      row.jumps.push_back(parse_double(t));
    }
    rows.push_back(std::move(row));
  }
  int n = 0;
  while (static_cast<std::size_t>(n) * n < rows.size()) {
    ++n;
  }
  if (n == 0 || static_cast<std::size_t>(n) * n != rows.size()) {
    throw ConfigError("trajectory CSV must hold n*n rows");
  }
  std::vector<std::uint8_t> initial(rows.size(), 2);
  std::vector<std::vector<double>> jumps(rows.size());
  for (auto& row : rows) {
    if (row.i < 0 || row.j < 0 || row.i >= n || row.j >= n || row.initial < 0 || row.initial > 1) {
      throw ConfigError("trajectory row out of range");
    }
    const auto e = static_cast<std::size_t>(row.i) * n + row.j;
    if (initial[e] != 2) {
      throw ConfigError("duplicate trajectory row");
    }
    initial[e] = static_cast<std::uint8_t>(row.initial);
    jumps[e] = std::move(row.jumps);
  }
  return EdgeTrajectorySet(n, a, std::move(initial), std::move(jumps), seed);
}

}  // namespace tgraphon
