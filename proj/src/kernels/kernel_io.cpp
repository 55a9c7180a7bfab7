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

#include <fstream>

#include "json.hpp"

#include "tgraphon/error.hpp"
#include "tgraphon/io.hpp"
#include "tgraphon/kernel.hpp"

namespace tgraphon {

void save_kernel(const std::filesystem::path& dir, const std::string& stem, const TemporalKernel& kernel) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["resolution"] = kernel.resolution();
  manifest["breakpoints"] =
      std::vector<double>(kernel.grid().breakpoints().begin(), kernel.grid().breakpoints().end());
  manifest["floor"] = kernel.floor();
  manifest["sup_bound"] = kernel.sup_bound();
  auto slabs = nlohmann::json::array();
  for (std::size_t m = 0; m < kernel.slab_count(); ++m) {
    const std::string name = stem + "_slab_" + std::to_string(m) + ".csv";
    std::ofstream out(dir / name);
    write_matrix_csv(out, kernel.slab(m));
    slabs.push_back(name);
  }
  manifest["slabs"] = slabs;
  std::ofstream out(dir / (stem + ".json"));
  out << manifest.dump(2) << '\n';
}

TemporalKernel load_kernel(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw ConfigError("cannot read kernel manifest " + manifest_path.string());
  }
  try {
    const auto manifest = nlohmann::json::parse(in);
    TimeGrid grid(manifest.at("breakpoints").get<std::vector<double>>());
    std::vector<Eigen::MatrixXd> slabs;
    for (const auto& name : manifest.at("slabs")) {
      const auto path = manifest_path.parent_path() / name.get<std::string>();
      std::ifstream slab(path);
      if (!slab) {
        throw ConfigError("cannot read kernel slab " + path.string());
      }
      slabs.push_back(read_matrix_csv(slab));
    }
    TemporalKernel kernel(std::move(grid), std::move(slabs), manifest.at("floor").get<double>(),
                          manifest.at("sup_bound").get<double>());
    if (manifest.at("resolution").get<int>() != kernel.resolution()) {
      throw ConfigError("kernel manifest resolution disagrees with its slabs");
    }
    return kernel;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(manifest_path.string() + ": " + e.what());
  }
}

}  // namespace tgraphon
