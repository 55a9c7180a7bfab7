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

#ifndef TGRAPHON_GRAPHON_HPP
#define TGRAPHON_GRAPHON_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

/**
 * \file
 * \brief Block (step) graphons, their time-indexed counterparts and the
 * averaging maps between block resolutions.
 *
 * Vertex i of a resolution-n object owns the interval ((i)/n, (i+1)/n] of
 * [0,1] (0-based), and cell (i,j) owns the product of two such intervals.
 */

namespace tgraphon {

/// Strictly increasing breakpoints 0 = t_0 < ... < t_M = 1.
/**
 * Slab m covers (t_m, t_{m+1}] (the first slab also contains t = 0), so a
 * piecewise-constant path indexed by a TimeGrid is left-continuous.
 */
class TimeGrid {
 public:
  /// The trivial grid {0, 1}.
  TimeGrid();
  explicit TimeGrid(std::vector<double> breakpoints);

  /// Equispaced grid with `slabs` slabs.
  static TimeGrid uniform(std::size_t slabs);

  [[nodiscard]] std::size_t slab_count() const { return breakpoints_.size() - 1; }
  [[nodiscard]] double begin(std::size_t m) const { return breakpoints_[m]; }
  [[nodiscard]] double end(std::size_t m) const { return breakpoints_[m + 1]; }
  [[nodiscard]] double width(std::size_t m) const { return breakpoints_[m + 1] - breakpoints_[m]; }
  [[nodiscard]] std::span<const double> breakpoints() const { return breakpoints_; }

  /// Index of the slab that governs time t (left-continuous convention).
  [[nodiscard]] std::size_t slab_at(double t) const;

  /// True when every breakpoint of `coarse` is also a breakpoint of this grid.
  [[nodiscard]] bool refines(const TimeGrid& coarse) const;

  /// Union of the breakpoints of both grids.
  static TimeGrid merge(const TimeGrid& a, const TimeGrid& b);

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> breakpoints_;
};

/// A graphon that is constant on each of the n x n cells.
class StepGraphon {
 public:
  /// Throws std::invalid_argument unless `values` is square, finite and in [0,1].
  explicit StepGraphon(Eigen::MatrixXd values);

  static StepGraphon constant(int n, double value);

  [[nodiscard]] int resolution() const { return static_cast<int>(values_.rows()); }
  [[nodiscard]] double operator()(int i, int j) const { return values_(i, j); }
  [[nodiscard]] const Eigen::MatrixXd& values() const { return values_; }
  [[nodiscard]] double mean() const { return values_.mean(); }

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) { return a.values_ == b.values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Piecewise-constant-in-time family of step graphons on a shared resolution.
class TemporalStepGraphon {
 public:
  TemporalStepGraphon(TimeGrid grid, std::vector<StepGraphon> slabs);

  static TemporalStepGraphon constant_in_time(StepGraphon value);

  [[nodiscard]] int resolution() const { return slabs_.front().resolution(); }
  [[nodiscard]] const TimeGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t slab_count() const { return slabs_.size(); }
  [[nodiscard]] const StepGraphon& slab(std::size_t m) const { return slabs_[m]; }
  [[nodiscard]] const StepGraphon& at(double t) const { return slabs_[grid_.slab_at(t)]; }

  /// Re-expresses the path on a refinement of its own grid.
  [[nodiscard]] TemporalStepGraphon on_grid(const TimeGrid& finer) const;

 private:
  TimeGrid grid_;
  std::vector<StepGraphon> slabs_;
};

/// Overlap weights P(i,u) = n |Q^n_i ∩ Q^k_u| between resolutions n and k.
/**
 * Rows sum to one. When k divides n the matrix is a 0/1 incidence matrix and
 * resampling is an exact refinement.
 */
Eigen::MatrixXd overlap_weights(int n, int k);

/// Cell means of a square block matrix at resolution `n` (P X P^T).
Eigen::MatrixXd resample_blocks(const Eigen::MatrixXd& values, int n);

/// Cell means of a block vector (one value per vertex interval) at resolution `n`.
Eigen::VectorXd resample_blocks(const Eigen::VectorXd& values, int n);

/// Step graphon re-expressed at an arbitrary resolution by cell averaging.
StepGraphon resample(const StepGraphon& f, int n);

/// Averages each (n/k) x (n/k) sub-block. Requires k to divide n.
StepGraphon block_project(const StepGraphon& f, int k);

/// Entrywise time integral over [0,1].
StepGraphon time_average(const TemporalStepGraphon& path);

/// Least common multiple of two resolutions, rejecting values above `cap`.
int common_resolution(int a, int b, int cap = 4096);

}  // namespace tgraphon

#endif
