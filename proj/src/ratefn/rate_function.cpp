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
#include <stdexcept>

#include "tgraphon/rate_function.hpp"

namespace tgraphon {

namespace {

TemporalStepGraphon at_resolution(const TemporalStepGraphon& path, int n) {
  if (path.resolution() == n) {
    return path;
  }
  std::vector<StepGraphon> slabs;
  for (std::size_t m = 0; m < path.slab_count(); ++m) {
    slabs.push_back(resample(path.slab(m), n));
  }
  return TemporalStepGraphon(path.grid(), std::move(slabs));
}

struct Aligned {
  TemporalStepGraphon phi;
  KernelPair pair;
};

Aligned align(const TemporalStepGraphon& phi, const KernelPair& pair) {
  const int n = common_resolution(phi.resolution(), pair.resolution());
  const TimeGrid grid = TimeGrid::merge(phi.grid(), pair.grid());
  return Aligned{at_resolution(phi, n).on_grid(grid), pair.at_resolution(n).on_grid(grid)};
}

}  // namespace

double slab_cost(double u, double b_plus, double b_minus) {
  const double d = std::sqrt(b_plus * (1.0 - u)) - std::sqrt(b_minus * u);
  return d * d;
}

double path_rate(const TemporalStepGraphon& phi, const KernelPair& pair) {
  const Aligned al = align(phi, pair);
  const int n = al.phi.resolution();
  const TimeGrid& grid = al.phi.grid();
  double total = 0.0;
  for (std::size_t m = 0; m < grid.slab_count(); ++m) {
    const auto u = al.phi.slab(m).values().array();
    const auto bp = al.pair.plus().slab(m).array();
    const auto bm = al.pair.minus().slab(m).array();
    total += grid.width(m) * ((bp * (1.0 - u)).sqrt() - (bm * u).sqrt()).square().sum();
  }
  return total / (static_cast<double>(n) * n);
}

double homogeneous_rate(const StepGraphon& f, const KernelPair& pair) {
  if (!pair.time_homogeneous()) {
    throw std::invalid_argument("homogeneous rate needs time-constant kernels");
  }
  return path_rate(TemporalStepGraphon::constant_in_time(f), pair);
}

double slab_minimizer(double b_plus, double b_minus, double lambda) {
  if (!(b_plus > 0.0 && b_minus > 0.0)) {
    throw std::invalid_argument("slab minimizer needs positive rates");
  }
  // Stationarity gives (1 - 2u) / sqrt(u (1 - u)) = kappa; the stable branch
  // avoids cancellation when |kappa| is large.
  const double kappa = (b_minus - b_plus - lambda) / std::sqrt(b_plus * b_minus);
  const double r = std::sqrt(4.0 + kappa * kappa);
  const double interior = kappa >= 0.0 ? 2.0 / (r * (r + kappa)) : 1.0 - 2.0 / (r * (r - kappa));
  const double u = std::clamp(interior, 0.0, 1.0);
  double best = u;
  double best_value = slab_cost(u, b_plus, b_minus) - lambda * u;
  for (const double end : {0.0, 1.0}) {
    const double v = slab_cost(end, b_plus, b_minus) - lambda * end;
    if (v < best_value) {
      best = end;
      best_value = v;
    }
  }
  return best;
}

CellSolution solve_cell(std::span<const double> weights, std::span<const double> b_plus,
                        std::span<const double> b_minus, double f, const RateEvalConfig& config) {
  const std::size_t slabs = weights.size();
  if (b_plus.size() != slabs || b_minus.size() != slabs || slabs == 0) {
    throw std::invalid_argument("cell inputs must have one entry per slab");
  }
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::invalid_argument("target value must lie in [0, 1]");
  }
  if (!(config.lagrange_tol > 0.0)) {
    throw std::invalid_argument("lagrange tolerance must be positive");
  }
  CellSolution sol;
  sol.u.assign(slabs, f);
  auto finish = [&] {
    double mass = 0.0;
    sol.value = 0.0;
    for (std::size_t m = 0; m < slabs; ++m) {
      mass += weights[m] * sol.u[m];
      sol.value += weights[m] * slab_cost(sol.u[m], b_plus[m], b_minus[m]);
    }
    sol.residual = std::abs(mass - f);
    sol.converged = sol.residual <= config.lagrange_tol;
    return sol;
  };
  if (f == 0.0 || f == 1.0) {
    return finish();
  }

  auto mass_at = [&](double lambda) {
    double mass = 0.0;
    for (std::size_t m = 0; m < slabs; ++m) {
      sol.u[m] = slab_minimizer(b_plus[m], b_minus[m], lambda);
      mass += weights[m] * sol.u[m];
    }
    return mass - f;
  };

  if (std::abs(mass_at(0.0)) <= config.lagrange_tol) {
    sol.multiplier = 0.0;
    return finish();
  }
  const double sup_plus = *std::max_element(b_plus.begin(), b_plus.end());
  const double sup_minus = *std::max_element(b_minus.begin(), b_minus.end());
  double bound = sup_plus + sup_minus + 4.0 * std::sqrt(sup_plus * sup_minus);
  double lo = -bound;
  double hi = bound;
  // The mass is nondecreasing in the multiplier.
  for (int widen = 0; widen < 8 && (mass_at(lo) > 0.0 || mass_at(hi) < 0.0); ++widen) {
    bound *= 2.0;
    lo = -bound;
    hi = bound;
  }
  for (int it = 0; it < config.max_bisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = mass_at(mid);
    sol.multiplier = mid;
    if (std::abs(g) <= config.lagrange_tol || !(mid > lo && mid < hi)) {
      break;
    }
    (g < 0.0 ? lo : hi) = mid;
  }
  return finish();
}

VariationalSolution variational_rate(const StepGraphon& f, const KernelPair& base, const RateEvalConfig& config) {
  const int n = common_resolution(f.resolution(), base.resolution());
  TimeGrid grid = base.grid();
  if (config.time_points) {
    grid = TimeGrid::merge(grid, *config.time_points);
  }
  const KernelPair pair = base.at_resolution(n).on_grid(grid);
  const StepGraphon target = resample(f, n);
  const std::size_t slabs = grid.slab_count();
  const double cell_area = 1.0 / (static_cast<double>(n) * n);

  std::vector<double> weights(slabs);
  for (std::size_t m = 0; m < slabs; ++m) {
    weights[m] = grid.width(m);
  }
  std::vector<Eigen::MatrixXd> phi(slabs, Eigen::MatrixXd(n, n));
  std::vector<double> bp(slabs);
  std::vector<double> bm(slabs);
  double value = 0.0;
  double residual = 0.0;
  bool converged = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (std::size_t m = 0; m < slabs; ++m) {
        bp[m] = pair.plus().slab(m)(i, j);
        bm[m] = pair.minus().slab(m)(i, j);
      }
      const CellSolution cell = solve_cell(weights, bp, bm, target(i, j), config);
      for (std::size_t m = 0; m < slabs; ++m) {
        phi[m](i, j) = cell.u[m];
      }
      value += cell_area * cell.value;
      residual = std::max(residual, cell.residual);
      converged = converged && cell.converged;
    }
  }
  std::vector<StepGraphon> slabs_out;
  for (auto& s : phi) {
    slabs_out.emplace_back(std::move(s));
  }
  return VariationalSolution{value, TemporalStepGraphon(grid, std::move(slabs_out)), residual, converged};
}

ZetaResult zeta(double h, double b_plus, double b_minus) {
  if (!(b_plus > 0.0 && b_minus > 0.0)) {
    throw std::invalid_argument("zeta needs positive rates");
  }
  if (!(h >= 0.0 && h <= 1.0)) {
    throw std::invalid_argument("zeta needs h in [0, 1]");
  }
  ZetaResult z;
  z.value = slab_cost(h, b_plus, b_minus);
  if (h > 0.0 && h < 1.0) {
    z.a_plus = std::sqrt(h * b_minus / ((1.0 - h) * b_plus));
    z.a_minus = std::sqrt((1.0 - h) * b_plus / (h * b_minus));
  }
  return z;
}

double rate_perturbation_bound(const KernelPair& a, const KernelPair& b) {
  const int n = common_resolution(a.resolution(), b.resolution());
  const TimeGrid grid = TimeGrid::merge(a.grid(), b.grid());
  const KernelPair pa = a.at_resolution(n).on_grid(grid);
  const KernelPair pb = b.at_resolution(n).on_grid(grid);
  double total = 0.0;
  for (std::size_t m = 0; m < grid.slab_count(); ++m) {
    const auto ap = pa.plus().slab(m).array();
    const auto am = pa.minus().slab(m).array();
    const auto bp = pb.plus().slab(m).array();
    const auto bm = pb.minus().slab(m).array();
    const double cell = (ap - bp).abs().sum() + (am - bm).abs().sum() + 2.0 * ((ap * am).sqrt() - (bp * bm).sqrt()).abs().sum();
    total += grid.width(m) * cell;
  }
  return total / (static_cast<double>(n) * n);
}

double dynamical_rate(const TemporalStepGraphon& phi, double z_cost, const KernelPair& pair) {
  if (!(z_cost >= 0.0)) {
    throw std::invalid_argument("initial-condition cost must be nonnegative");
  }
  return path_rate(phi, pair) + z_cost;
}

}  // namespace tgraphon
