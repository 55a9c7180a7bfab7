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
#include <stdexcept>

#include "tgraphon/cut_norm.hpp"
#include "tgraphon/estimators.hpp"
#include "tgraphon/rng.hpp"

namespace tgraphon {

namespace {

struct Replicate {
  double value = 0.0;
  double log_lr = 0.0;
};

std::vector<Replicate> run_replicates(const KernelPair& pair, double a, const StepGraphon& initial_probabilities,
                                      const GraphStatistic& statistic, const TiltPlan& plan, std::size_t reps,
                                      std::uint64_t seed, const ParallelOptions& parallel) {
  if (reps < 2) {
    throw std::invalid_argument("at least two replications are required");
  }
  if (initial_probabilities.resolution() != pair.resolution()) {
    throw std::invalid_argument("initial law and kernel pair disagree on n");
  }
  std::vector<Replicate> out(reps);
  const ParallelOptions serial{1};
  parallel_for(reps, parallel, [&](std::size_t r) {
    const std::uint64_t rep_seed = derive_seed(seed, r);
    const StepGraphon initial = bernoulli_initial(initial_probabilities, rep_seed);
    const TiltedRun run = simulate_tilted(pair, a, initial, plan, rep_seed, serial);
    out[r] = Replicate{statistic(occupation(run.trajectories)), run.log_likelihood_ratio};
  });
  return out;
}

struct Moments {
  double mean = 0.0;
  double half_width = 0.0;
  double ess = 0.0;
};

/// ESS runs over the replications with a nonzero value when `hits_only` is set.
Moments weighted_moments(const std::vector<Replicate>& reps, bool hits_only) {
  const auto count = static_cast<double>(reps.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  double weight_sum = 0.0;
  double weight_sq = 0.0;
  for (const auto& r : reps) {
    const double w = std::exp(-r.log_lr);
    const double x = r.value * w;
    sum += x;
    sum_sq += x * x;
    if (!hits_only || r.value != 0.0) {
      weight_sum += w;
      weight_sq += w * w;
    }
  }
  Moments m;
  m.mean = sum / count;
  const double variance = std::max(0.0, (sum_sq - count * m.mean * m.mean) / (count - 1.0));
  m.half_width = 1.96 * std::sqrt(variance / count);
  m.ess = weight_sq > 0.0 ? weight_sum * weight_sum / weight_sq : 0.0;
  return m;
}

}  // namespace

RareEventEstimate estimate_rare_event(const KernelPair& pair, double a, const StepGraphon& initial_probabilities,
                                      const GraphEvent& event, const TiltPlan& plan, std::size_t reps,
                                      std::uint64_t seed, const ParallelOptions& parallel) {
  const GraphStatistic indicator = [&](const StepGraphon& m) { return event(m) ? 1.0 : 0.0; };
  const auto runs = run_replicates(pair, a, initial_probabilities, indicator, plan, reps, seed, parallel);
  const Moments m = weighted_moments(runs, true);

  RareEventEstimate est;
  est.replications = reps;
  est.effective_sample_size = m.ess;
  if (m.ess == 0.0) {
    est.log_estimate = -std::numeric_limits<double>::infinity();
    return est;
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    if (r.value != 0.0) {
      peak = std::max(peak, -r.log_lr);
    }
  }
  double scaled = 0.0;
  for (const auto& r : runs) {
    if (r.value != 0.0) {
      scaled += std::exp(-r.log_lr - peak);
    }
  }
  est.log_estimate = peak + std::log(scaled) - std::log(static_cast<double>(reps));
  est.point_estimate = std::clamp(m.mean, 0.0, 1.0);
  est.ci_half_width = m.half_width;
  return est;
}

WeightedMean estimate_expectation(const KernelPair& pair, double a, const StepGraphon& initial_probabilities,
                                  const GraphStatistic& statistic, const TiltPlan& plan, std::size_t reps,
                                  std::uint64_t seed, const ParallelOptions& parallel) {
  const auto runs = run_replicates(pair, a, initial_probabilities, statistic, plan, reps, seed, parallel);
  const Moments m = weighted_moments(runs, false);
  return WeightedMean{m.mean, m.half_width, reps, m.ess};
}

double concentration_bound(int n, double delta) {
  const double nn = static_cast<double>(n);
  return std::exp(std::min(0.0, 2.0 * nn * std::log(2.0) - nn * nn * delta * delta / 2.0));
}

std::vector<ConcentrationRow> concentration_check(const KernelPair& pair, const SpeedSchedule& speed,
                                                  const std::vector<int>& ns, const std::vector<double>& deltas,
                                                  std::size_t reps, std::uint64_t seed,
                                                  const ParallelOptions& parallel) {
  for (const double d : deltas) {
    if (!(d > 0.0 && d <= 1.0)) {
      throw std::invalid_argument("delta must lie in (0, 1]");
    }
  }
  if (reps == 0) {
    throw std::invalid_argument("at least one replication is required");
  }
  std::vector<ConcentrationRow> rows;
  for (const int n : ns) {
    const KernelPair projected = pair.at_resolution(n);
    const double a = speed(n);
    const StepGraphon start = empty_initial(n);
    const StepGraphon mean = mean_graphon_exact(pair, n, a, 1.0, start);
    const CutMode mode = n <= kExactCutResolution ? CutMode::exact : CutMode::heuristic;
    const std::uint64_t n_seed = derive_seed(seed, static_cast<std::uint64_t>(n));

    std::vector<double> distance(reps);
    const ParallelOptions serial{1};
    parallel_for(reps, parallel, [&](std::size_t r) {
      const std::uint64_t rep_seed = derive_seed(n_seed, r);
      const auto trajectories = simulate(projected, a, start, rep_seed, serial);
      const HeuristicOptions options{32, derive_seed(rep_seed, 1)};
      distance[r] = inf_to_one_distance(snapshot(trajectories, 1.0), mean, mode, options).value;
    });

    for (const double delta : deltas) {
      ConcentrationRow row;
      row.n = n;
      row.a = a;
      row.delta = delta;
      row.replications = reps;
      const auto hits = std::count_if(distance.begin(), distance.end(), [&](double d) { return d >= delta; });
      row.empirical = static_cast<double>(hits) / static_cast<double>(reps);
      row.bound = concentration_bound(n, delta);
      row.standard_error = std::sqrt(row.empirical * (1.0 - row.empirical) / static_cast<double>(reps));
      row.certified = mode == CutMode::exact;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace tgraphon
