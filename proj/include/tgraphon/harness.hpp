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


#ifndef TGRAPHON_HARNESS_HPP
#define TGRAPHON_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tgraphon/kernel.hpp"
#include "tgraphon/parallel.hpp"
#include "tgraphon/simulation.hpp"

/**
 * \file
 * \brief Experiment configs, orchestration and report bundles.
 *
 * A config is a JSON object whose "experiment" field selects the run. Rows
 * are deterministic functions of the config and the seed; wall-clock data is
 * kept out of them and written to metadata.json only.
 */

namespace tgraphon {

inline constexpr const char* kCodeVersion = "0.1.0";

enum class ExperimentKind { simulate, lln, ldp, concentration, dynamics, ratefn, cutnorm };

std::string to_string(ExperimentKind kind);
/// Throws ConfigError for unknown names.
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lln;
  /// Canonical settings with defaults filled in; the basis of the config hash.
  nlohmann::json settings;
  std::uint64_t seed = 0;
  std::optional<KernelPair> kernels;
  /// ratefn only: second pair for the perturbation envelope.
  std::optional<KernelPair> perturbed_kernels;
  std::filesystem::path output_dir;
  ParallelOptions parallel;

  /// Hex SHA-256 of the canonical settings (output directory excluded).
  [[nodiscard]] std::string hash() const;
};

/// Parses and validates a config; relative paths resolve against base_dir.
/**
 * Kernel entries accept a number (constant rate), {"constant": c,
 * "resolution": k}, {"matrix": rows}, {"breakpoints": [...], "rates": [...]},
 * {"breakpoints": [...], "slabs": [rows...]} or {"manifest": path}.
 * Throws ConfigError on unknown keys, bad types or unresolvable files.
 */
ExperimentConfig parse_config(const nlohmann::json& raw, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// One verdict per acceptance rule the experiment evaluates.
struct Verdict {
  std::string rule;
  bool passed = false;
  std::string detail;
};

/// Named CSV-ready table for plotdata/.
struct PlotTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::lln;
  std::string config_hash;
  std::uint64_t seed = 0;
  /// Flat objects with identical key order; every row carries seed and config_hash.
  std::vector<nlohmann::ordered_json> rows;
  std::vector<Verdict> verdicts;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<PlotTable> plots;
  /// Extra files (name, contents) written next to the rows.
  std::vector<std::pair<std::string, std::string>> attachments;

  [[nodiscard]] bool passed() const;
};

ExperimentReport run_simulate(const ExperimentConfig& config);
ExperimentReport run_lln(const ExperimentConfig& config);
ExperimentReport run_ldp(const ExperimentConfig& config);
ExperimentReport run_concentration(const ExperimentConfig& config);
ExperimentReport run_dynamics(const ExperimentConfig& config);
ExperimentReport run_ratefn(const ExperimentConfig& config);
ExperimentReport run_cutnorm(const ExperimentConfig& config);

/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

enum class RowFormat { csv, jsonl };

/// Writes config.snapshot, rows.csv or rows.jsonl, summary.json, metadata.json and plotdata/.
void write_report(const ExperimentReport& report, const ExperimentConfig& config, const std::filesystem::path& dir,
                  RowFormat format, double wall_seconds = 0.0);

/// Rows as CSV with the key order of the first row.
std::string rows_to_csv(const std::vector<nlohmann::ordered_json>& rows);
std::string rows_to_jsonl(const std::vector<nlohmann::ordered_json>& rows);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// Median of a nonempty sample (mean of the middle pair for even sizes).
double median(std::vector<double> values);

}  // namespace tgraphon

#endif
