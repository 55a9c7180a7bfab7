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

#ifndef TGRAPHON_MOTIF_HPP
#define TGRAPHON_MOTIF_HPP

#include <utility>
#include <vector>

#include "tgraphon/graphon.hpp"

namespace tgraphon {

/// Simple directed graph on vertices {0, ..., k-1}: no loops, no repeated edges.
class DirectedMotif {
 public:
  DirectedMotif(int vertex_count, std::vector<std::pair<int, int>> edges);

  static DirectedMotif single_edge();
  /// 0 -> 1 -> ... -> k-1 -> 0
  static DirectedMotif directed_cycle(int k);
  /// 0 -> 1 -> ... -> k-1
  static DirectedMotif directed_path(int k);

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
};

/// t(h, F): probability that a uniform vertex map F -> h keeps every edge.
/**
 * Exact for step graphons: the integral over [0,1]^k is the average over the
 * n^k assignments of motif vertices to blocks. Assignments are enumerated
 * depth-first so partial products that hit zero prune their subtree.
 * Throws std::invalid_argument for k > 8 at n > 256.
 */
double homomorphism_density(const StepGraphon& h, const DirectedMotif& motif);

}  // namespace tgraphon

#endif
