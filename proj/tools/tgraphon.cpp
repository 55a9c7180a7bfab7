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


// tgraphon: runs one experiment from a JSON config and writes a report bundle.
//
// Exit codes: 0 when every verdict passes, 2 when any verdict fails, 1 on
// usage or configuration errors.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tgraphon/error.hpp"
#include "tgraphon/harness.hpp"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = 0;
  std::string format = "csv";
};

int run(const std::string& command, const Options& options) {
  std::ifstream in(options.config);
  if (!in) {
    throw tgraphon::ConfigError("cannot read config " + options.config);
  }
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw tgraphon::ConfigError(options.config + ": " + e.what());
  }
  if (!raw.is_object()) {
    throw tgraphon::ConfigError("config must be a JSON object");
  }
  if (raw.contains("experiment") && raw.at("experiment") != command) {
    throw tgraphon::ConfigError("config is for \"" + raw.at("experiment").dump() + "\", not \"" + command + "\"");
  }
  raw["experiment"] = command;
  if (options.seed) {
    raw["seed"] = *options.seed;
  }
  if (options.threads > 0) {
    raw["threads"] = options.threads;
  }
  const auto base = std::filesystem::path(options.config).parent_path();
  auto config = tgraphon::parse_config(raw, base);
  if (!options.out.empty()) {
    config.output_dir = options.out;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto report = tgraphon::run_experiment(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  tgraphon::write_report(report, config, config.output_dir,
                         options.format == "jsonl" ? tgraphon::RowFormat::jsonl : tgraphon::RowFormat::csv, wall);

  for (const auto& v : report.verdicts) {
    std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << v.rule;
    if (!v.detail.empty()) {
      std::cout << " (" << v.detail << ")";
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << config.output_dir.string() << " (config " << report.config_hash.substr(0, 12) << ", "
            << report.rows.size() << " rows)\n";
  return report.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal graphon edge-flip experiments"};
  app.require_subcommand(1);
  Options options;
  std::uint64_t seed = 0;
  for (const char* name : {"simulate", "lln", "ldp", "dynamics", "ratefn", "cutnorm", "concentration"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", options.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--out", options.out, "output directory (overrides the config)");
    sub->add_option("--threads", options.threads, "worker threads, 0 = all cores");
    sub->add_option("--format", options.format, "row format")->check(CLI::IsMember({"csv", "jsonl"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const auto* chosen = app.get_subcommands().front();
  if (chosen->count("--seed") > 0) {
    options.seed = seed;
  }
  try {
    return run(chosen->get_name(), options);
  } catch (const tgraphon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
