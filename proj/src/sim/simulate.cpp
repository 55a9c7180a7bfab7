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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tgraphon/error.hpp"
#include "tgraphon/rng.hpp"
#include "tgraphon/simulation.hpp"

namespace tgraphon {

EdgeTrajectorySet::EdgeTrajectorySet(int n, double a, std::vector<std::uint8_t> initial,
                                     std::vector<std::vector<double>> jumps, std::uint64_t seed)
    : n_(n), a_(a), initial_(std::move(initial)), jumps_(std::move(jumps)), seed_(seed) {
  const auto edges = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  if (n_ <= 0 || initial_.size() != edges || jumps_.size() != edges) {
    throw DimensionMismatch("trajectory set needs n*n initial states and jump lists");
  }
  if (!(a_ > 0.0)) {
    throw std::invalid_argument("speed a must be positive");
  }
  for (std::size_t e = 0; e < edges; ++e) {
    if (initial_[e] > 1) {
      throw std::invalid_argument("initial states must be 0 or 1");
    }
    double prev = 0.0;
    for (const double t : jumps_[e]) {
      if (!(t > prev) || t > 1.0) {
        throw std::invalid_argument("jump times must be strictly increasing within (0,1]");
      }
      prev = t;
    }
  }
}

int EdgeTrajectorySet::state_at(int i, int j, double t) const {
  const auto& js = jumps_[index(i, j)];
  const auto count = std::upper_bound(js.begin(), js.end(), t) - js.begin();
  return initial_[index(i, j)] ^ static_cast<int>(count & 1);
}

std::size_t EdgeTrajectorySet::total_jumps() const {
  std::size_t total = 0;
  for (const auto& js : jumps_) {
    total += js.size();
  }
  return total;
}

StepGraphon empty_initial(int n) { return StepGraphon::constant(n, 0.0); }

StepGraphon bernoulli_initial(const StepGraphon& probabilities, std::uint64_t seed) {
  const int n = probabilities.resolution();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CounterStream stream(seed, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           StreamPurpose::initial_state);
      out(i, j) = stream.uniform() < probabilities(i, j) ? 1.0 : 0.0;
    }
  }
  return StepGraphon(std::move(out));
}

namespace {

/// Rates of one edge, slab by slab, on a shared grid.
struct EdgeRates {
  std::vector<double> up;    // creation rate being simulated
  std::vector<double> down;  // deletion rate being simulated
  // Present only for tilted runs: the untilted reference rates.
  std::vector<double> base_up;
  std::vector<double> base_down;
};

/// Runs one edge chain over [0,1]; returns its log-likelihood ratio (0 when untilted).
double run_edge(std::span<const double> breakpoints, const EdgeRates& rates, double a, int state,
                CounterStream& stream, std::vector<double>& jumps) {
  const bool tilted = !rates.base_up.empty();
  const std::size_t slabs = rates.up.size();
  double log_lr = 0.0;
  double t = 0.0;
  double budget = stream.exponential();
  std::size_t m = 0;
  while (m < slabs) {
    const double rate = a * (state != 0 ? rates.down[m] : rates.up[m]);
    const double end = breakpoints[m + 1];
    const double hazard = rate * (end - t);
    if (budget < hazard) {
      double jump = std::min(t + budget / rate, end);
      if (!(jump > t)) {
        jump = std::nextafter(t, 2.0);
      }
      if (tilted) {
        const double sim = state != 0 ? rates.down[m] : rates.up[m];
        const double base = state != 0 ? rates.base_down[m] : rates.base_up[m];
        log_lr += std::log(sim / base) - a * (sim - base) * (jump - t);
      }
      jumps.push_back(jump);
      state ^= 1;
      t = jump;
      budget = stream.exponential();
      if (t >= end) {
        ++m;
      }
    } else {
      if (tilted) {
        const double sim = state != 0 ? rates.down[m] : rates.up[m];
        const double base = state != 0 ? rates.base_down[m] : rates.base_up[m];
        log_lr -= a * (sim - base) * (end - t);
      }
      budget -= hazard;
      t = end;
      ++m;
    }
  }
  return log_lr;
}

void fill(std::vector<double>& out, const TemporalKernel& kernel, int i, int j) {
  out.resize(kernel.slab_count());
  for (std::size_t m = 0; m < kernel.slab_count(); ++m) {
    out[m] = kernel.slab(m)(i, j);
  }
}

std::vector<std::uint8_t> initial_states(const StepGraphon& initial) {
  const int n = initial.resolution();
  std::vector<std::uint8_t> states(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = initial(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("initial graphon must have 0/1 entries");
      }
      states[static_cast<std::size_t>(i) * n + j] = v == 1.0 ? 1 : 0;
    }
  }
  return states;
}

struct RunOutput {
  std::vector<std::vector<double>> jumps;
  std::vector<double> log_lr;
};

RunOutput run_all(const KernelPair& simulated, const KernelPair* base, double a, const std::vector<std::uint8_t>& states, int n,
                  std::uint64_t seed, const ParallelOptions& parallel) {
  const auto edges = static_cast<std::size_t>(n) * n;
  RunOutput out{std::vector<std::vector<double>>(edges), std::vector<double>(edges, 0.0)};
  const auto breakpoints = simulated.grid().breakpoints();
  parallel_for(edges, parallel, [&](std::size_t e) {
    const int i = static_cast<int>(e / n);
    const int j = static_cast<int>(e % n);
    EdgeRates rates;
    fill(rates.up, simulated.plus(), i, j);
    fill(rates.down, simulated.minus(), i, j);
    if (base != nullptr) {
      fill(rates.base_up, base->plus(), i, j);
      fill(rates.base_down, base->minus(), i, j);
    }
    CounterStream stream(seed, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    out.log_lr[e] = run_edge(breakpoints, rates, a, states[e], stream, out.jumps[e]);
  });
  return out;
}

void check_inputs(const KernelPair& pair, double a, const StepGraphon& initial) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("speed a must be positive and finite");
  }
  if (pair.resolution() != initial.resolution()) {
    throw DimensionMismatch("kernel resolution " + std::to_string(pair.resolution()) +
                            " differs from graph size " + std::to_string(initial.resolution()));
  }
}

}  // namespace

EdgeTrajectorySet simulate(const KernelPair& pair, double a, const StepGraphon& initial, std::uint64_t seed,
                           const ParallelOptions& parallel) {
  check_inputs(pair, a, initial);
  const int n = initial.resolution();
  auto states = initial_states(initial);
  auto run = run_all(pair, nullptr, a, states, n, seed, parallel);
  return EdgeTrajectorySet(n, a, std::move(states), std::move(run.jumps), seed);
}

TiltedRun simulate_tilted(const KernelPair& pair, double a, const StepGraphon& initial, const TiltPlan& plan,
                          std::uint64_t seed, const ParallelOptions& parallel) {
  check_inputs(pair, a, initial);
  if (plan.resolution() != pair.resolution()) {
    throw DimensionMismatch("tilt plan resolution differs from the kernel pair");
  }
  const TimeGrid common = TimeGrid::merge(pair.grid(), plan.grid());
  const KernelPair base = pair.on_grid(common);
  const KernelPair tilted = plan.tilted_pair().on_grid(common);
  for (std::size_t m = 0; m < common.slab_count(); ++m) {
    const bool singular = ((base.plus().slab(m).array() <= 0.0) && (tilted.plus().slab(m).array() > 0.0)).any() ||
                          ((base.minus().slab(m).array() <= 0.0) && (tilted.minus().slab(m).array() > 0.0)).any();
    if (singular) {
      throw std::invalid_argument("tilted rates are positive where the original rates vanish");
    }
  }

  const int n = initial.resolution();
  auto states = initial_states(initial);
  auto run = run_all(tilted, &base, a, states, n, seed, parallel);
  double log_lr = 0.0;
  for (const double v : run.log_lr) {
    log_lr += v;
  }
  return TiltedRun{EdgeTrajectorySet(n, a, std::move(states), std::move(run.jumps), seed), log_lr};
}

StepGraphon snapshot(const EdgeTrajectorySet& trajectories, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("snapshot time must lie in [0,1]");
  }
  const int n = trajectories.size();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = trajectories.state_at(i, j, t);
    }
  }
  return StepGraphon(std::move(out));
}

StepGraphon occupation(const EdgeTrajectorySet& trajectories) {
  const int n = trajectories.size();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int state = trajectories.initial_state(i, j);
      double last = 0.0;
      double present = 0.0;
      for (const double t : trajectories.jumps(i, j)) {
        if (state != 0) {
          present += t - last;
        }
        state ^= 1;
        last = t;
      }
      if (state != 0) {
        present += 1.0 - last;
      }
      out(i, j) = std::clamp(present, 0.0, 1.0);
    }
  }
  return StepGraphon(std::move(out));
}

}  // namespace tgraphon
