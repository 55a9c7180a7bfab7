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

#ifndef TGRAPHON_IO_HPP
#define TGRAPHON_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "tgraphon/graphon.hpp"

/**
 * \file
 * \brief Text formats for step graphons.
 *
 * A step graphon is a dense row-major CSV preceded by the header line
 * `n=<n>`. A temporal step graphon is a JSON manifest
 *
 *     {"resolution": n, "breakpoints": [0, ..., 1], "slabs": ["slab_0.csv", ...]}
 *
 * whose slab paths are relative to the manifest's directory.
 */

namespace tgraphon {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Strict full-string double parse; throws ConfigError on junk.
double parse_double(std::string_view text);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& values);
/// Reads the `n=<n>` header and n rows of n comma-separated values.
Eigen::MatrixXd read_matrix_csv(std::istream& in);

void write_step_graphon_csv(std::ostream& out, const StepGraphon& f);
StepGraphon read_step_graphon_csv(std::istream& in);

void save_step_graphon(const std::filesystem::path& path, const StepGraphon& f);
StepGraphon load_step_graphon(const std::filesystem::path& path);

/// Writes `<dir>/<stem>.json` plus `<dir>/<stem>_slab_<m>.csv`; returns the manifest path.
std::filesystem::path save_temporal_graphon(const std::filesystem::path& dir, const std::string& stem,
                                            const TemporalStepGraphon& path);
TemporalStepGraphon load_temporal_graphon(const std::filesystem::path& manifest);

}  // namespace tgraphon

#endif
