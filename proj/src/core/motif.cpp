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

#include "tgraphon/motif.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tgraphon {

DirectedMotif::DirectedMotif(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ <= 0) {
    throw std::invalid_argument("motif needs at least one vertex");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) {
      throw std::invalid_argument("motif edge endpoint out of range");
    }
    if (u == v) {
      throw std::invalid_argument("motif edges must join distinct vertices");
    }
    if (!seen.insert({u, v}).second) {
      throw std::invalid_argument("motif has a repeated edge");
    }
  }
}

DirectedMotif DirectedMotif::single_edge() { return DirectedMotif(2, {{0, 1}}); }

DirectedMotif DirectedMotif::directed_cycle(int k) {
  if (k < 2) {
    throw std::invalid_argument("a directed cycle needs at least two vertices");
  }
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < k; ++v) {
    edges.emplace_back(v, (v + 1) % k);
  }
  return DirectedMotif(k, std::move(edges));
}

DirectedMotif DirectedMotif::directed_path(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < k; ++v) {
    edges.emplace_back(v, v + 1);
  }
  return DirectedMotif(k, std::move(edges));
}

namespace {

struct DensityWalk {
  const Eigen::MatrixXd& h;
  // closing[v]: edges whose later endpoint (in assignment order) is v.
  std::vector<std::vector<std::pair<int, int>>> closing;
  std::vector<int> block;
  int n;

  double descend(int v) {
    if (v == static_cast<int>(block.size())) {
      return 1.0;
    }
    double total = 0.0;
    for (int b = 0; b < n; ++b) {
      block[v] = b;
      double w = 1.0;
      for (const auto& [s, t] : closing[v]) {
        w *= h(block[s], block[t]);
        if (w == 0.0) {
          break;
        }
      }
      if (w != 0.0) {
        total += w * descend(v + 1);
      }
    }
    return total / n;
  }
};

}  // namespace

double homomorphism_density(const StepGraphon& h, const DirectedMotif& motif) {
  const int k = motif.vertex_count();
  const int n = h.resolution();
  if (k > 8 && n > 256) {
    throw std::invalid_argument("homomorphism density enumeration too large (k > 8 at n > 256)");
  }
  DensityWalk walk{h.values(), std::vector<std::vector<std::pair<int, int>>>(k), std::vector<int>(k, 0), n};
  for (const auto& [u, v] : motif.edges()) {
    walk.closing[std::max(u, v)].emplace_back(u, v);
  }
  return walk.descend(0);
}

}  // namespace tgraphon
