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

#ifndef TGRAPHON_KERNEL_HPP
#define TGRAPHON_KERNEL_HPP

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tgraphon/graphon.hpp"

/**
 * \file
 * \brief Edge creation / deletion rate kernels and their analytic consequences.
 *
 * A kernel is a block function of (x, y) at some resolution k that is
 * piecewise constant and left-continuous in time. Creation rates (absent to
 * present) and deletion rates (present to absent) travel together as a
 * KernelPair sharing one time grid.
 */

namespace tgraphon {

class TemporalKernel {
 public:
  /// Rates must be finite, nonnegative and at most `sup_bound`; `floor` must be positive.
  /**
   * The floor is a declared lower bound. It is checked by validate_assumptions
   * (and satisfies_floor) instead of being enforced here, so that violating
   * inputs can still be inspected.
   */
  TemporalKernel(TimeGrid grid, std::vector<Eigen::MatrixXd> slabs, double floor, double sup_bound);

  /// Constant rate at resolution k; floor and sup_bound equal the rate.
  static TemporalKernel constant(double rate, int k = 1);

  /// Spatially constant (resolution 1) rates, one per slab of `grid`.
  static TemporalKernel piecewise_in_time(TimeGrid grid, const std::vector<double>& rates);

  /// Time-constant block kernel with floor/sup taken from the entries.
  static TemporalKernel from_matrix(Eigen::MatrixXd rates);

  [[nodiscard]] int resolution() const { return static_cast<int>(slabs_.front().rows()); }
  [[nodiscard]] const TimeGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t slab_count() const { return slabs_.size(); }
  [[nodiscard]] const Eigen::MatrixXd& slab(std::size_t m) const { return slabs_[m]; }
  [[nodiscard]] const Eigen::MatrixXd& at(double t) const { return slabs_[grid_.slab_at(t)]; }
  [[nodiscard]] double floor() const { return floor_; }
  [[nodiscard]] double sup_bound() const { return sup_bound_; }

  [[nodiscard]] double min_rate() const;
  [[nodiscard]] double max_rate() const;
  [[nodiscard]] bool satisfies_floor() const { return min_rate() >= floor_; }
  [[nodiscard]] bool time_homogeneous() const;

  /// Same kernel on a refinement of its grid.
  [[nodiscard]] TemporalKernel on_grid(const TimeGrid& finer) const;

  /// Mean of the rate over [0,1]^3.
  [[nodiscard]] double integral() const;

 private:
  TimeGrid grid_;
  std::vector<Eigen::MatrixXd> slabs_;
  double floor_;
  double sup_bound_;
};

/// Cell means of every slab at resolution n; floor and sup_bound carry over.
TemporalKernel project_kernel(const TemporalKernel& kernel, int n);

/// Creation (plus) and deletion (minus) rates on their common time refinement.
class KernelPair {
 public:
  /// Throws DimensionMismatch if the spatial resolutions differ.
  KernelPair(TemporalKernel plus, TemporalKernel minus);

  static KernelPair constant(double plus, double minus, int k = 1);

  [[nodiscard]] const TemporalKernel& plus() const { return plus_; }
  [[nodiscard]] const TemporalKernel& minus() const { return minus_; }
  [[nodiscard]] const TimeGrid& grid() const { return plus_.grid(); }
  [[nodiscard]] int resolution() const { return plus_.resolution(); }
  [[nodiscard]] bool time_homogeneous() const { return plus_.time_homogeneous() && minus_.time_homogeneous(); }

  /// Both kernels projected to resolution n.
  [[nodiscard]] KernelPair at_resolution(int n) const;
  /// Both kernels on a refinement of the shared grid.
  [[nodiscard]] KernelPair on_grid(const TimeGrid& finer) const;

 private:
  TemporalKernel plus_;
  TemporalKernel minus_;
};

/// Stationary edge density w = plus / (plus + minus) and its time average.
struct MeanField {
  TemporalStepGraphon w;
  StepGraphon w_star;
};

MeanField mean_field(const KernelPair& pair);

/// E H^n_t in closed form, cell by cell.
/**
 * On every constant-rate slab the edge probability relaxes exponentially
 * toward the slab's stationary value at rate a (plus + minus); the slabs are
 * chained up to time t. The pair is projected to resolution n first.
 * `initial` holds the probabilities at t = 0 (0/1 for a deterministic start).
 */
StepGraphon mean_graphon_exact(const KernelPair& pair, int n, double a, double t, const StepGraphon& initial);

/// Fixed exponents eta for which L^{1+eta} discrepancies are reported.
inline constexpr std::array<double, 3> kDiscrepancyExponents{0.1, 0.5, 1.0};

struct KernelDiscrepancy {
  int resolution = 0;
  double sup_time_l1_plus = 0.0;   ///< int sup_s |beta^{n,+}_s - beta^+_s| dx dy
  double sup_time_l1_minus = 0.0;
  std::array<double, 3> lp_plus{};  ///< || beta^{n,+} - beta^+ ||_{L^{1+eta}([0,1]^3)} per exponent
  std::array<double, 3> lp_minus{};
};

struct AssumptionReport {
  bool floor_ok = false;
  double min_rate = 0.0;
  std::vector<KernelDiscrepancy> rows;
  bool discrepancies_nonincreasing = false;

  [[nodiscard]] bool passed() const { return floor_ok && discrepancies_nonincreasing; }
};

/// Floor check and the projection discrepancies along `resolutions`.
AssumptionReport validate_assumptions(const KernelPair& pair, std::span<const int> resolutions);

/// Manifest: {"resolution", "breakpoints", "floor", "sup_bound", "slabs": [csv, ...]}.
void save_kernel(const std::filesystem::path& dir, const std::string& stem, const TemporalKernel& kernel);
TemporalKernel load_kernel(const std::filesystem::path& manifest);

}  // namespace tgraphon

#endif
