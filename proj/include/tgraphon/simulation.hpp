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

#ifndef TGRAPHON_SIMULATION_HPP
#define TGRAPHON_SIMULATION_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "tgraphon/graphon.hpp"
#include "tgraphon/kernel.hpp"
#include "tgraphon/parallel.hpp"

/**
 * \file
 * \brief Exact simulation of the n^2 independent edge-flip chains.
 *
 * Edge (i, j) is created at rate a * plus_ij(t) and deleted at rate
 * a * minus_ij(t). Rates are piecewise constant in time, so holding times are
 * drawn by inverting the integrated hazard slab by slab: one Exp(1) draw is
 * consumed across breakpoints until it is exhausted, with no thinning and no
 * time discretization.
 */

namespace tgraphon {

/// Speed a(n) = coefficient * n^exponent.
struct SpeedSchedule {
  double coefficient = 1.0;
  double exponent = 1.0;

  [[nodiscard]] double operator()(int n) const { return coefficient * std::pow(static_cast<double>(n), exponent); }
};

/// Per-edge initial states and sorted jump times on (0, 1].
class EdgeTrajectorySet {
 public:
  /// Validates 0/1 initial states and strictly increasing jump times in (0, 1].
  EdgeTrajectorySet(int n, double a, std::vector<std::uint8_t> initial, std::vector<std::vector<double>> jumps,
                    std::uint64_t seed);

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] double speed() const { return a_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] int initial_state(int i, int j) const { return initial_[index(i, j)]; }
  [[nodiscard]] std::span<const double> jumps(int i, int j) const { return jumps_[index(i, j)]; }
  /// initial XOR (number of jumps <= t) mod 2
  [[nodiscard]] int state_at(int i, int j, double t) const;
  [[nodiscard]] std::size_t total_jumps() const;

  friend bool operator==(const EdgeTrajectorySet&, const EdgeTrajectorySet&) = default;

 private:
  [[nodiscard]] std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_;
  double a_;
  std::vector<std::uint8_t> initial_;
  std::vector<std::vector<double>> jumps_;
  std::uint64_t seed_;
};

/// All edges absent.
StepGraphon empty_initial(int n);
/// Independent Bernoulli(p_ij) states drawn from the (seed, i, j) streams.
StepGraphon bernoulli_initial(const StepGraphon& probabilities, std::uint64_t seed);

/// Simulates every edge of `pair` (which must have resolution n = initial.resolution()).
EdgeTrajectorySet simulate(const KernelPair& pair, double a, const StepGraphon& initial, std::uint64_t seed,
                           const ParallelOptions& parallel = {});

/// 0/1 graphon of the graph at time t.
StepGraphon snapshot(const EdgeTrajectorySet& trajectories, double t);

/// Fraction of [0,1] each edge spends present (the time-averaged graphon).
StepGraphon occupation(const EdgeTrajectorySet& trajectories);

/// Control multipliers tilting the edge chains toward a target temporal graphon.
/**
 * For a target phi clipped to [clip, 1 - clip] the controls are
 * alpha+ = sqrt(phi minus / ((1 - phi) plus)) and alpha- = 1 / alpha+, and the
 * tilted rates are upsilon± = alpha± beta±. They satisfy the balance relation
 * alpha+ beta+ (1 - phi) = alpha- beta- phi, so the tilted chain's stationary
 * density on every slab is phi.
 */
class TiltPlan {
 public:
  /// No tilt: target w, alpha± = 1 exactly, upsilon± = beta±.
  static TiltPlan identity(const KernelPair& pair);

  [[nodiscard]] const TemporalStepGraphon& target() const { return target_; }
  [[nodiscard]] const TemporalKernel& alpha_plus() const { return alpha_plus_; }
  [[nodiscard]] const TemporalKernel& alpha_minus() const { return alpha_minus_; }
  [[nodiscard]] const TemporalKernel& upsilon_plus() const { return upsilon_plus_; }
  [[nodiscard]] const TemporalKernel& upsilon_minus() const { return upsilon_minus_; }
  [[nodiscard]] const KernelPair& base() const { return base_; }
  [[nodiscard]] const TimeGrid& grid() const { return base_.grid(); }
  [[nodiscard]] int resolution() const { return base_.resolution(); }
  [[nodiscard]] KernelPair tilted_pair() const { return KernelPair(upsilon_plus_, upsilon_minus_); }

  /// max |alpha+ beta+ (1 - phi) - alpha- beta- phi| over cells and slabs.
  [[nodiscard]] double balance_residual() const;

 private:
  friend TiltPlan make_tilt(const KernelPair&, const TemporalStepGraphon&, double);
  TiltPlan(KernelPair base, TemporalStepGraphon target, TemporalKernel alpha_plus, TemporalKernel alpha_minus,
           TemporalKernel upsilon_plus, TemporalKernel upsilon_minus);

  KernelPair base_;
  TemporalStepGraphon target_;
  TemporalKernel alpha_plus_;
  TemporalKernel alpha_minus_;
  TemporalKernel upsilon_plus_;
  TemporalKernel upsilon_minus_;
};

inline constexpr double kDefaultTiltClip = 1e-3;

/// Requires clip in (0, 1/2) and target.resolution() == pair.resolution().
TiltPlan make_tilt(const KernelPair& pair, const TemporalStepGraphon& target, double clip = kDefaultTiltClip);

struct TiltedRun {
  EdgeTrajectorySet trajectories;
  /// log of d(tilted law)/d(original law) evaluated on the simulated paths.
  double log_likelihood_ratio = 0.0;
};

/// Simulates under the tilted rates and accumulates the exact log-likelihood ratio.
/**
 * Per edge: sum over jumps of log(upsilon / beta) for the transition taken,
 * minus a * integral of (upsilon - beta) along the realized state, both exact
 * per slab.
 */
TiltedRun simulate_tilted(const KernelPair& pair, double a, const StepGraphon& initial, const TiltPlan& plan,
                          std::uint64_t seed, const ParallelOptions& parallel = {});

/// `i,j,initial,t1;t2;...` lines with a header row.
void write_trajectories_csv(std::ostream& out, const EdgeTrajectorySet& trajectories);
EdgeTrajectorySet read_trajectories_csv(std::istream& in, double a, std::uint64_t seed);

}  // namespace tgraphon

#endif
