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


#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>

#include "tgraphon/error.hpp"
#include "tgraphon/harness.hpp"

namespace tgraphon {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<ExperimentKind, const char*>, 7> kKindNames{{
    {ExperimentKind::simulate, "simulate"},
    {ExperimentKind::lln, "lln"},
    {ExperimentKind::ldp, "ldp"},
    {ExperimentKind::concentration, "concentration"},
    {ExperimentKind::dynamics, "dynamics"},
    {ExperimentKind::ratefn, "ratefn"},
    {ExperimentKind::cutnorm, "cutnorm"},
}};

/// Default settings per experiment; keys absent here are rejected.
json defaults_for(ExperimentKind kind) {
  const json speed = {{"coefficient", 1.0}, {"exponent", 1.0}};
  switch (kind) {
    case ExperimentKind::simulate:
      return {{"n", 8}, {"speed", speed}, {"initial", "stationary"}};
    case ExperimentKind::lln:
      return {{"n_schedule", {8, 16, 32, 64}},
              {"speed", speed},
              {"reps", 20},
              {"sample_times", 20},
              {"initial", "stationary"},
              {"tolerances", {{"final_cut", 0.1}, {"integral_cut", 0.15}}}};
    case ExperimentKind::ldp:
      return {{"n", 1},
              {"level", 0.8},
              {"a_schedule", {10.0, 20.0, 40.0}},
              {"direct_reps", 2000000},
              {"direct_max_a", 10.0},
              {"is_reps", 100000},
              {"initial", "stationary"},
              {"tilt_clip", kDefaultTiltClip},
              {"tolerances", {{"slope_relative", 0.25}}}};
    case ExperimentKind::concentration:
      return {{"n_schedule", {8, 16, 30}}, {"deltas", {0.3, 0.5}}, {"reps", 1000}, {"speed", speed}};
    case ExperimentKind::dynamics:
      return {{"n_schedule", {8, 16, 32}},
              {"speed", speed},
              {"reps", 20},
              {"space_resolution", 64},
              {"output_points", 20},
              {"h_max", 1e-3},
              {"initial", "stationary"},
              {"spec", {{"kind", "kuramoto"}, {"coupling", 1.0}, {"omega_amplitude", 0.5}}},
              {"initial_field", {{"kind", "sine"}, {"amplitude", 1.0}, {"frequency", 1.0}}},
              {"frozen_check", {{"n", 32}, {"tolerance", 1e-4}}}};
    case ExperimentKind::ratefn:
      return {{"targets", json::array()},
              {"expected", json::array()},
              {"tolerance", 1e-12},
              {"collapse_tolerance", 1e-6},
              {"perturbed_kernels", nullptr}};
    case ExperimentKind::cutnorm:
      return {{"n", 12}, {"instances", 100}, {"restarts", 32}, {"required_matches", 99}};
  }
  return json::object();
}

bool needs_kernels(ExperimentKind kind) { return kind != ExperimentKind::cutnorm; }

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) {
    throw ConfigError(where + ": expected a nonempty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(where + ": matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

TemporalKernel kernel_from_json(const json& spec, const std::filesystem::path& base_dir, const std::string& where) {
  if (spec.is_number()) {
    return TemporalKernel::constant(spec.get<double>());
  }
  if (!spec.is_object()) {
    throw ConfigError(where + ": kernel must be a number or an object");
  }
  if (spec.contains("manifest")) {
    auto path = std::filesystem::path(spec.at("manifest").get<std::string>());
    if (path.is_relative()) {
      path = base_dir / path;
    }
    return load_kernel(path);
  }
  if (spec.contains("constant")) {
    return TemporalKernel::constant(spec.at("constant").get<double>(), spec.value("resolution", 1));
  }
  if (spec.contains("matrix")) {
    return TemporalKernel::from_matrix(matrix_from_json(spec.at("matrix"), where));
  }
  if (spec.contains("breakpoints") && spec.contains("rates")) {
    return TemporalKernel::piecewise_in_time(TimeGrid(spec.at("breakpoints").get<std::vector<double>>()),
                                             spec.at("rates").get<std::vector<double>>());
  }
  if (spec.contains("breakpoints") && spec.contains("slabs")) {
    std::vector<Eigen::MatrixXd> slabs;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& s : spec.at("slabs")) {
      slabs.push_back(matrix_from_json(s, where));
      lo = std::min(lo, slabs.back().minCoeff());
      hi = std::max(hi, slabs.back().maxCoeff());
    }
    return TemporalKernel(TimeGrid(spec.at("breakpoints").get<std::vector<double>>()), std::move(slabs),
                          spec.value("floor", lo), spec.value("sup_bound", hi));
  }
  throw ConfigError(where + ": unrecognized kernel description");
}

/// Self-contained form, so the hash depends on rates rather than file paths.
json kernel_to_json(const TemporalKernel& k) {
  json slabs = json::array();
  for (std::size_t m = 0; m < k.slab_count(); ++m) {
    slabs.push_back(matrix_to_json(k.slab(m)));
  }
  return {{"breakpoints", std::vector<double>(k.grid().breakpoints().begin(), k.grid().breakpoints().end())},
          {"slabs", slabs},
          {"floor", k.floor()},
          {"sup_bound", k.sup_bound()}};
}

KernelPair pair_from_json(const json& spec, const std::filesystem::path& base_dir, const std::string& where) {
  if (!spec.is_object() || !spec.contains("plus") || !spec.contains("minus") || spec.size() != 2) {
    throw ConfigError(where + ": expected exactly {\"plus\": ..., \"minus\": ...}");
  }
  return KernelPair(kernel_from_json(spec.at("plus"), base_dir, where + ".plus"),
                    kernel_from_json(spec.at("minus"), base_dir, where + ".minus"));
}

json pair_to_json(const KernelPair& pair) {
  return {{"plus", kernel_to_json(pair.plus())}, {"minus", kernel_to_json(pair.minus())}};
}

/// Overlays `given` on `defaults`, recursing into objects that have defaults.
void merge_into(json& defaults, const json& given, const std::string& where) {
  for (const auto& [key, value] : given.items()) {
    if (!defaults.contains(key)) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
    auto& slot = defaults[key];
    const bool open_object = key == "spec" || key == "initial_field" || key == "perturbed_kernels";
    if (slot.is_object() && value.is_object() && !open_object && !slot.empty()) {
      merge_into(slot, value, where + "." + key);
    } else if (!slot.is_null() && !value.is_null() && slot.type() != value.type() &&
               !(slot.is_number() && value.is_number()) && !open_object) {
      throw ConfigError(where + ": key \"" + key + "\" has the wrong type");
    } else {
      slot = value;
    }
  }
}

void require_schedule(const json& settings, const char* key) {
  if (settings.contains(key) && (!settings.at(key).is_array() || settings.at(key).empty())) {
    throw ConfigError(std::string("schedule \"") + key + "\" must be a nonempty array");
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& [k, text] : kKindNames) {
    if (name == text) {
      return k;
    }
  }
  throw ConfigError("unknown experiment kind \"" + name + "\"");
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < length; ++k) {
    out += kHex[digest[k] >> 4];
    out += kHex[digest[k] & 0xF];
  }
  return out;
}

std::string ExperimentConfig::hash() const { return sha256_hex(settings.dump()); }

ExperimentConfig parse_config(const json& raw, const std::filesystem::path& base_dir) {
  try {
    if (!raw.is_object()) {
      throw ConfigError("config must be a JSON object");
    }
    if (!raw.contains("experiment") || !raw.at("experiment").is_string()) {
      throw ConfigError("config needs a string \"experiment\" field");
    }
    if (!raw.contains("seed") || !raw.at("seed").is_number_integer()) {
      throw ConfigError("config needs an integer \"seed\" field");
    }
    ExperimentConfig config;
    config.kind = parse_experiment_kind(raw.at("experiment").get<std::string>());
    config.seed = raw.at("seed").get<std::uint64_t>();

    json settings = defaults_for(config.kind);
    json given = raw;
    for (const char* key : {"experiment", "seed", "kernels", "output_dir", "threads"}) {
      given.erase(key);
    }
    merge_into(settings, given, "config");
    for (const char* key : {"n_schedule", "a_schedule", "deltas"}) {
      require_schedule(settings, key);
    }

    if (needs_kernels(config.kind)) {
      if (!raw.contains("kernels")) {
        throw ConfigError("config needs a \"kernels\" entry");
      }
      config.kernels = pair_from_json(raw.at("kernels"), base_dir, "kernels");
      settings["kernels"] = pair_to_json(*config.kernels);
    }
    if (settings.contains("perturbed_kernels") && !settings.at("perturbed_kernels").is_null()) {
      config.perturbed_kernels = pair_from_json(settings.at("perturbed_kernels"), base_dir, "perturbed_kernels");
      settings["perturbed_kernels"] = pair_to_json(*config.perturbed_kernels);
    }
    settings["experiment"] = to_string(config.kind);
    settings["seed"] = config.seed;
    config.settings = std::move(settings);

    config.output_dir = raw.contains("output_dir")
                            ? base_dir / raw.at("output_dir").get<std::string>()
                            : std::filesystem::path("out") / to_string(config.kind);
    config.parallel.threads = raw.value("threads", 0U);
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config " + path.string());
  }
  json raw;
  try {
    raw = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(raw, path.parent_path());
}

}  // namespace tgraphon
