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


#ifndef TGRAPHON_ESTIMATORS_HPP
#define TGRAPHON_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "tgraphon/kernel.hpp"
#include "tgraphon/parallel.hpp"
#include "tgraphon/simulation.hpp"

/**
 * \file
 * \brief Monte Carlo estimators built on the (tilted) edge-flip simulator.
 *
 * Replication r runs with seed derive_seed(seed, r); its initial graph is
 * drawn from `initial_probabilities` with that seed (0/1 entries give a
 * deterministic start). Replications are reduced in index order, so results
 * do not depend on the thread count.
 */

namespace tgraphon {

using GraphEvent = std::function<bool(const StepGraphon&)>;
using GraphStatistic = std::function<double(const StepGraphon&)>;

struct RareEventEstimate {
  double point_estimate = 0.0;  ///< clamped to [0, 1]
  double log_estimate = 0.0;    ///< -inf when no replication hit the event
  double ci_half_width = 0.0;   ///< 1.96 standard errors
  std::size_t replications = 0;
  double effective_sample_size = 0.0;  ///< 0 flags an empty estimate
};

/// Importance-sampling estimate of P(event(M^n)) under `plan`.
/**
 * Each replication contributes 1{event(M^n)} exp(-log_lr). The identity plan
 * gives the direct Monte Carlo estimator.
 */
RareEventEstimate estimate_rare_event(const KernelPair& pair, double a, const StepGraphon& initial_probabilities,
                                      const GraphEvent& event, const TiltPlan& plan, std::size_t reps,
                                      std::uint64_t seed, const ParallelOptions& parallel = {});

struct WeightedMean {
  double mean = 0.0;
  double ci_half_width = 0.0;  ///< 1.96 standard errors
  std::size_t replications = 0;
  double effective_sample_size = 0.0;
};

/// Weighted estimate of E[g(M^n)] under the original law, sampling under `plan`.
WeightedMean estimate_expectation(const KernelPair& pair, double a, const StepGraphon& initial_probabilities,
                                  const GraphStatistic& statistic, const TiltPlan& plan, std::size_t reps,
                                  std::uint64_t seed, const ParallelOptions& parallel = {});

/// min(1, 2^{2n} exp(-n^2 delta^2 / 2)), evaluated in log space.
double concentration_bound(int n, double delta);

struct ConcentrationRow {
  int n = 0;
  double a = 0.0;
  double delta = 0.0;
  std::size_t replications = 0;
  double empirical = 0.0;  ///< frequency of {d_inf->1(H^n_1, E H^n_1) >= delta}
  double bound = 0.0;
  double standard_error = 0.0;  ///< sqrt(p(1-p)/reps) at the empirical p
  bool certified = false;       ///< every distance was computed exactly
  [[nodiscard]] bool within_envelope() const { return empirical <= bound + 3.0 * standard_error; }
};

/// Concentration of the snapshot at t = 1 around its mean, from the empty graph.
/**
 * The pair is projected to each n, simulated at speed a(n) and compared with
 * mean_graphon_exact in d_inf->1 (exact up to kExactCutResolution, heuristic
 * above). One distance per replication serves all deltas.
 */
std::vector<ConcentrationRow> concentration_check(const KernelPair& pair, const SpeedSchedule& speed,
                                                  const std::vector<int>& ns, const std::vector<double>& deltas,
                                                  std::size_t reps, std::uint64_t seed,
                                                  const ParallelOptions& parallel = {});

}  // namespace tgraphon

#endif
