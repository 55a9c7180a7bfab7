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


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tgraphon/error.hpp"
#include "tgraphon/harness.hpp"

using namespace tgraphon;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("tgraphon_harness_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json small_lln() {
  return {{"experiment", "lln"},
          {"seed", 99},
          {"kernels", {{"plus", 1.0}, {"minus", 1.0}}},
          {"n_schedule", {4, 8}},
          {"reps", 3},
          {"sample_times", 4}};
}

}  // namespace

TEST_CASE("SHA-256 known answers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("config defaults and validation") {
  const auto config = parse_config(small_lln(), ".");
  CHECK(config.kind == ExperimentKind::lln);
  CHECK(config.seed == 99);
  CHECK(config.settings.at("speed").at("exponent") == 1.0);
  CHECK(config.settings.at("tolerances").at("final_cut") == 0.1);
  CHECK(config.kernels->resolution() == 1);

  auto bad = small_lln();
  bad["n_shedule"] = {8};
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad.erase("seed");
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad["n_schedule"] = json::array();
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad["reps"] = "many";
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad["experiment"] = "nonsense";
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad["kernels"] = {{"plus", {{"manifest", "missing.json"}}}, {"minus", 1.0}};
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);
  bad = small_lln();
  bad["kernels"] = {{"plus", {{"matrix", {{1.0, 2.0}, {1.0, 1.0}}}}}, {"minus", 1.0}};
  CHECK_THROWS_AS(parse_config(bad, "."), ConfigError);  // resolutions 2 and 1
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("kernel forms and content-based hashing") {
  const auto dir = scratch("kernels");
  const auto rates = TemporalKernel::piecewise_in_time(TimeGrid({0.0, 0.5, 1.0}), {2.0, 1.0});
  save_kernel(dir, "plus", rates);

  auto inline_form = small_lln();
  inline_form["kernels"] = {{"plus", {{"breakpoints", {0.0, 0.5, 1.0}}, {"rates", {2.0, 1.0}}}}, {"minus", 1.0}};
  auto manifest_form = small_lln();
  manifest_form["kernels"] = {{"plus", {{"manifest", "plus.json"}}}, {"minus", {{"constant", 1.0}}}};
  const auto a = parse_config(inline_form, dir);
  const auto b = parse_config(manifest_form, dir);
  CHECK(a.hash() == b.hash());
  CHECK(a.kernels->plus().slab(0)(0, 0) == 2.0);

  auto moved = inline_form;
  moved["output_dir"] = "elsewhere";
  moved["threads"] = 3;
  CHECK(parse_config(moved, dir).hash() == a.hash());
  moved["seed"] = 100;
  CHECK(parse_config(moved, dir).hash() != a.hash());

  auto matrix_form = small_lln();
  matrix_form["kernels"] = {{"plus", {{"matrix", {{1.0, 2.0}, {3.0, 4.0}}}}},
                            {"minus", {{"constant", 1.0}, {"resolution", 2}}}};
  CHECK(parse_config(matrix_form, dir).kernels->resolution() == 2);

  // The snapshot is itself a loadable config with the same hash.
  const auto snapshot = parse_config(a.settings, dir);
  CHECK(snapshot.hash() == a.hash());
}

TEST_CASE("CSV and JSONL rows") {
  std::vector<nlohmann::ordered_json> rows(2);
  rows[0]["x"] = 1;
  rows[0]["label"] = "a,b";
  rows[0]["v"] = 0.1;
  rows[0]["flag"] = true;
  rows[0]["missing"] = nullptr;
  rows[1]["x"] = 2;
  rows[1]["label"] = "q\"t";
  rows[1]["v"] = 2.5;
  rows[1]["flag"] = false;
  rows[1]["missing"] = 3.0;
  CHECK(rows_to_csv(rows) == "x,label,v,flag,missing\n1,\"a,b\",0.1,true,\n2,\"q\"\"t\",2.5,false,3\n");
  CHECK(rows_to_jsonl(rows).find("{\"x\":1,\"label\":\"a,b\"") == 0);
  rows[1].erase("flag");
  CHECK_THROWS_AS(rows_to_csv(rows), std::logic_error);
}

TEST_CASE("reports are idempotent and thread-invariant") {
  auto raw = small_lln();
  raw["threads"] = 1;
  const auto serial = parse_config(raw, ".");
  raw["threads"] = 3;
  const auto threaded = parse_config(raw, ".");
  const auto first = run_lln(serial);
  const auto second = run_lln(threaded);
  CHECK(rows_to_csv(first.rows) == rows_to_csv(second.rows));

  const auto d1 = scratch("idem1");
  const auto d2 = scratch("idem2");
  write_report(first, serial, d1, RowFormat::csv, 1.0);
  write_report(second, threaded, d2, RowFormat::csv, 2.0);
  for (const char* name : {"rows.csv", "summary.json", "config.snapshot", "plotdata/lln_medians.csv"}) {
    CAPTURE(name);
    CHECK(slurp(d1 / name) == slurp(d2 / name));
  }
  CHECK(std::filesystem::exists(d1 / "metadata.json"));
  write_report(first, serial, d1, RowFormat::jsonl);
  CHECK(std::filesystem::exists(d1 / "rows.jsonl"));

  for (const auto& row : first.rows) {
    CHECK(row.at("config_hash") == serial.hash());
    CHECK(row.contains("seed"));
  }
}

TEST_CASE("lln handles the one-vertex case") {
  auto raw = small_lln();
  raw["n_schedule"] = {1};
  const auto report = run_lln(parse_config(raw, "."));
  CHECK(report.rows.size() == 3);
}

TEST_CASE("ldp rejects time-varying kernels and sees a flat slope at w*") {
  json raw{{"experiment", "ldp"},
           {"seed", 4},
           {"kernels", {{"plus", {{"breakpoints", {0.0, 0.5, 1.0}}, {"rates", {1.0, 2.0}}}}, {"minus", 1.0}}},
           {"a_schedule", {5.0}},
           {"direct_reps", 1000},
           {"is_reps", 1000}};
  CHECK_THROWS_AS(run_ldp(parse_config(raw, ".")), ConfigError);

  raw["kernels"] = {{"plus", 1.0}, {"minus", 1.0}};
  raw["level"] = 0.5;
  raw["a_schedule"] = {5.0, 20.0};
  raw["direct_max_a"] = 0.0;
  const auto report = run_ldp(parse_config(raw, "."));
  CHECK(report.summary.at("i_hom") == 0.0);
  CHECK(report.summary.at("final_slope").get<double>() < 0.05);
}

TEST_CASE("dynamics without interaction matches the continuum") {
  json raw{{"experiment", "dynamics"},
           {"seed", 2},
           {"kernels", {{"plus", 1.0}, {"minus", 1.0}}},
           {"n_schedule", {8}},
           {"reps", 2},
           {"space_resolution", 8},
           {"output_points", 5},
           {"spec", {{"kind", "constant"}, {"drift", 0.3}, {"interaction", 0.0}}},
           {"frozen_check", {{"n", 8}, {"tolerance", 1e-4}}}};
  const auto report = run_dynamics(parse_config(raw, "."));
  for (const auto& row : report.rows) {
    CHECK(row.at("sup_weak_distance").get<double>() < 1e-12);
  }
  CHECK(report.passed());
  raw["spec"] = {{"kind", "mystery"}};
  CHECK_THROWS_AS(run_dynamics(parse_config(raw, ".")), ConfigError);
}

TEST_CASE("ratefn and cutnorm delegate with verdicts") {
  json rate{{"experiment", "ratefn"},
            {"seed", 1},
            {"kernels", {{"plus", 2.0}, {"minus", 1.0}}},
            {"targets", {1.0 / 3.0}},
            {"expected", {1.0 / 3.0}}};
  const auto r = run_ratefn(parse_config(rate, "."));
  CHECK(r.passed());
  rate["expected"] = {0.3};
  CHECK_FALSE(run_ratefn(parse_config(rate, ".")).passed());
  rate["expected"] = {0.3, 0.4};
  CHECK_THROWS_AS(run_ratefn(parse_config(rate, ".")), ConfigError);

  json cut{{"experiment", "cutnorm"}, {"seed", 3}, {"n", 6}, {"instances", 10}, {"required_matches", 10}};
  const auto c = run_cutnorm(parse_config(cut, "."));
  CHECK(c.passed());
  CHECK(c.rows.size() == 10);
  cut["n"] = 40;
  CHECK_THROWS_AS(run_cutnorm(parse_config(cut, ".")), ConfigError);
}

TEST_CASE("simulate writes trajectories") {
  json raw{{"experiment", "simulate"}, {"seed", 8}, {"kernels", {{"plus", 1.0}, {"minus", 1.0}}}, {"n", 4}};
  const auto config = parse_config(raw, ".");
  const auto report = run_experiment(config);
  REQUIRE(report.attachments.size() == 1);
  std::istringstream in(report.attachments[0].second);
  const auto traj = read_trajectories_csv(in, 4.0, 8);
  CHECK(traj.size() == 4);
  CHECK(report.rows[0].at("total_jumps") == traj.total_jumps());
}
