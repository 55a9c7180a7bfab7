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


#ifndef TGRAPHON_RATE_FUNCTION_HPP
#define TGRAPHON_RATE_FUNCTION_HPP

#include <optional>
#include <span>
#include <vector>

#include "tgraphon/graphon.hpp"
#include "tgraphon/kernel.hpp"

/**
 * \file
 * \brief Large-deviation rate functions of the edge-flip process.
 *
 * All inputs are piecewise constant in time and block constant in space, so
 * every integral below is an exact finite sum over cells and slabs. Mixed
 * resolutions are brought to their least common multiple, and time grids to
 * their union, before summing.
 */

namespace tgraphon {

/// Pointwise cost (sqrt(b+ (1 - u)) - sqrt(b- u))^2, convex in u on [0, 1].
double slab_cost(double u, double b_plus, double b_minus);

struct RateEvalConfig {
  /// Extra breakpoints merged into the kernel grid. Refining never changes the
  /// optimum for piecewise-constant kernels; it only enlarges the minimizer.
  std::optional<TimeGrid> time_points;
  double lagrange_tol = 1e-10;
  int max_bisection = 200;
};

/// Path rate: integral over cells and time of slab_cost(phi, beta+, beta-).
double path_rate(const TemporalStepGraphon& phi, const KernelPair& pair);

/// Time-homogeneous rate of a static graphon. Throws if either kernel varies in time.
double homogeneous_rate(const StepGraphon& f, const KernelPair& pair);

/// One cell of the variational problem:
/// min sum_m w_m cost_m(u_m) subject to sum_m w_m u_m = f and 0 <= u_m <= 1.
struct CellSolution {
  double value = 0.0;
  std::vector<double> u;
  double multiplier = 0.0;
  double residual = 0.0;  ///< |sum_m w_m u_m - f|
  bool converged = false;
};

/// Minimizer of cost(u) - lambda u over [0, 1] (closed form; requires b+, b- > 0).
double slab_minimizer(double b_plus, double b_minus, double lambda);

/// Lagrangian dual bisection on the multiplier. Weights must be positive and sum to 1.
CellSolution solve_cell(std::span<const double> weights, std::span<const double> b_plus,
                        std::span<const double> b_minus, double f, const RateEvalConfig& config = {});

struct VariationalSolution {
  double value = 0.0;
  TemporalStepGraphon minimizer;
  double constraint_residual = 0.0;  ///< max over cells of |int phi*_s ds - f|
  bool converged = false;            ///< every cell met lagrange_tol
};

/// Time-averaged rate inf { path_rate(phi) : int phi_s ds = f }, solved cell by cell.
VariationalSolution variational_rate(const StepGraphon& f, const KernelPair& pair, const RateEvalConfig& config = {});

struct ZetaResult {
  double value = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
};

/// Pointwise optimal control problem: value slab_cost(h, b+, b-) and the
/// balancing controls; both controls are 0 at h in {0, 1}. Requires b+, b- > 0.
ZetaResult zeta(double h, double b_plus, double b_minus);

/// ||A+ - B+||_1 + ||A- - B-||_1 + 2 ||sqrt(A+ A-) - sqrt(B+ B-)||_1 over [0,1]^3.
double rate_perturbation_bound(const KernelPair& a, const KernelPair& b);

/// path_rate(phi) + z_cost for one candidate (phi, z); z_cost must be nonnegative.
double dynamical_rate(const TemporalStepGraphon& phi, double z_cost, const KernelPair& pair);

}  // namespace tgraphon

#endif
