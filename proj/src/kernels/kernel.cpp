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

#include "tgraphon/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tgraphon/error.hpp"

namespace tgraphon {

TemporalKernel::TemporalKernel(TimeGrid grid, std::vector<Eigen::MatrixXd> slabs, double floor, double sup_bound)
    : grid_(std::move(grid)), slabs_(std::move(slabs)), floor_(floor), sup_bound_(sup_bound) {
  if (slabs_.size() != grid_.slab_count()) {
    throw DimensionMismatch("kernel needs one slab per grid interval");
  }
  if (!(floor_ > 0.0) || !std::isfinite(sup_bound_) || sup_bound_ < floor_) {
    throw std::invalid_argument("kernel needs 0 < floor <= sup_bound < inf");
  }
  const auto k = slabs_.front().rows();
  for (const auto& s : slabs_) {
    if (s.rows() == 0 || s.rows() != k || s.cols() != k) {
      throw DimensionMismatch("kernel slabs must be square with a common resolution");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      for (Eigen::Index i = 0; i < k; ++i) {
        const double r = s(i, j);
        if (!std::isfinite(r) || r < 0.0) {
          throw std::invalid_argument("kernel rates must be finite and nonnegative");
        }
        if (r > sup_bound_ * (1.0 + 1e-12)) {
          throw std::invalid_argument("kernel rate " + std::to_string(r) + " exceeds sup_bound " +
                                      std::to_string(sup_bound_));
        }
      }
    }
  }
}

TemporalKernel TemporalKernel::constant(double rate, int k) {
  return TemporalKernel(TimeGrid{}, {Eigen::MatrixXd::Constant(k, k, rate)}, rate, rate);
}

TemporalKernel TemporalKernel::piecewise_in_time(TimeGrid grid, const std::vector<double>& rates) {
  if (rates.empty()) {
    throw std::invalid_argument("need at least one rate");
  }
  std::vector<Eigen::MatrixXd> slabs;
  for (const double r : rates) {
    slabs.push_back(Eigen::MatrixXd::Constant(1, 1, r));
  }
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  return TemporalKernel(std::move(grid), std::move(slabs), *lo, *hi);
}

TemporalKernel TemporalKernel::from_matrix(Eigen::MatrixXd rates) {
  const double lo = rates.minCoeff();
  const double hi = rates.maxCoeff();
  return TemporalKernel(TimeGrid{}, {std::move(rates)}, lo, hi);
}

double TemporalKernel::min_rate() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& s : slabs_) {
    lo = std::min(lo, s.minCoeff());
  }
  return lo;
}

double TemporalKernel::max_rate() const {
  double hi = 0.0;
  for (const auto& s : slabs_) {
    hi = std::max(hi, s.maxCoeff());
  }
  return hi;
}

bool TemporalKernel::time_homogeneous() const {
  return std::all_of(slabs_.begin(), slabs_.end(), [&](const auto& s) { return s == slabs_.front(); });
}

TemporalKernel TemporalKernel::on_grid(const TimeGrid& finer) const {
  if (!finer.refines(grid_)) {
    throw DimensionMismatch("target grid does not refine the kernel's grid");
  }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(finer.slab_count());
  for (std::size_t m = 0; m < finer.slab_count(); ++m) {
    out.push_back(slabs_[grid_.slab_at(0.5 * (finer.begin(m) + finer.end(m)))]);
  }
  return TemporalKernel(finer, std::move(out), floor_, sup_bound_);
}

double TemporalKernel::integral() const {
  double total = 0.0;
  for (std::size_t m = 0; m < slabs_.size(); ++m) {
    total += grid_.width(m) * slabs_[m].mean();
  }
  return total;
}

TemporalKernel project_kernel(const TemporalKernel& kernel, int n) {
  if (n == kernel.resolution()) {
    return kernel;
  }
  std::vector<Eigen::MatrixXd> slabs;
  slabs.reserve(kernel.slab_count());
  for (std::size_t m = 0; m < kernel.slab_count(); ++m) {
    // Averages of values in [floor, sup] stay there up to rounding.
    slabs.push_back(resample_blocks(kernel.slab(m), n).cwiseMin(kernel.sup_bound()));
  }
  return TemporalKernel(kernel.grid(), std::move(slabs), kernel.floor(), kernel.sup_bound());
}

KernelPair::KernelPair(TemporalKernel plus, TemporalKernel minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (plus_.resolution() != minus_.resolution()) {
    throw DimensionMismatch("creation and deletion kernels differ in resolution");
  }
  if (!(plus_.grid() == minus_.grid())) {
    const TimeGrid common = TimeGrid::merge(plus_.grid(), minus_.grid());
    plus_ = plus_.on_grid(common);
    minus_ = minus_.on_grid(common);
  }
}

KernelPair KernelPair::constant(double plus, double minus, int k) {
  return KernelPair(TemporalKernel::constant(plus, k), TemporalKernel::constant(minus, k));
}

KernelPair KernelPair::at_resolution(int n) const {
  return KernelPair(project_kernel(plus_, n), project_kernel(minus_, n));
}

KernelPair KernelPair::on_grid(const TimeGrid& finer) const {
  return KernelPair(plus_.on_grid(finer), minus_.on_grid(finer));
}

MeanField mean_field(const KernelPair& pair) {
  std::vector<StepGraphon> slabs;
  slabs.reserve(pair.grid().slab_count());
  for (std::size_t m = 0; m < pair.grid().slab_count(); ++m) {
    const auto& p = pair.plus().slab(m);
    const auto& q = pair.minus().slab(m);
    const Eigen::MatrixXd total = p + q;
    if ((total.array() <= 0.0).any()) {
      throw std::invalid_argument("mean field undefined where both rates vanish");
    }
    slabs.emplace_back((p.array() / total.array()).matrix());
  }
  TemporalStepGraphon w(pair.grid(), std::move(slabs));
  StepGraphon w_star = time_average(w);
  return MeanField{std::move(w), std::move(w_star)};
}

StepGraphon mean_graphon_exact(const KernelPair& pair, int n, double a, double t, const StepGraphon& initial) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("speed a must be positive");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("time must lie in [0,1]");
  }
  if (initial.resolution() != n) {
    throw DimensionMismatch("initial graphon resolution differs from n");
  }
  const KernelPair local = pair.at_resolution(n);
  const TimeGrid& grid = local.grid();
  Eigen::ArrayXXd p = initial.values().array();
  for (std::size_t m = 0; m < grid.slab_count() && grid.begin(m) < t; ++m) {
    const double dt = std::min(grid.end(m), t) - grid.begin(m);
    const Eigen::ArrayXXd up = local.plus().slab(m).array();
    const Eigen::ArrayXXd total = up + local.minus().slab(m).array();
    const Eigen::ArrayXXd w = up / total;
    p = w + (p - w) * (-a * dt * total).exp();
  }
  return StepGraphon(p.matrix().cwiseMax(0.0).cwiseMin(1.0));
}

namespace {

struct Discrepancy {
  double sup_time_l1 = 0.0;
  std::array<double, 3> lp{};
};

Discrepancy discrepancy(const TemporalKernel& projected, const TemporalKernel& base) {
  const int fine = common_resolution(projected.resolution(), base.resolution());
  const TimeGrid& grid = base.grid();
  Eigen::ArrayXXd sup_diff = Eigen::ArrayXXd::Zero(fine, fine);
  std::array<double, 3> power_sums{};
  for (std::size_t m = 0; m < grid.slab_count(); ++m) {
    const Eigen::ArrayXXd diff =
        (resample_blocks(projected.slab(m), fine) - resample_blocks(base.slab(m), fine)).array().abs();
    sup_diff = sup_diff.max(diff);
    for (std::size_t e = 0; e < kDiscrepancyExponents.size(); ++e) {
      power_sums[e] += grid.width(m) * diff.pow(1.0 + kDiscrepancyExponents[e]).mean();
    }
  }
  Discrepancy out;
  out.sup_time_l1 = sup_diff.mean();
  for (std::size_t e = 0; e < kDiscrepancyExponents.size(); ++e) {
    out.lp[e] = std::pow(power_sums[e], 1.0 / (1.0 + kDiscrepancyExponents[e]));
  }
  return out;
}

}  // namespace

AssumptionReport validate_assumptions(const KernelPair& pair, std::span<const int> resolutions) {
  AssumptionReport report;
  report.min_rate = std::min(pair.plus().min_rate(), pair.minus().min_rate());
  report.floor_ok = pair.plus().satisfies_floor() && pair.minus().satisfies_floor();
  report.discrepancies_nonincreasing = true;
  for (const int n : resolutions) {
    const KernelPair projected = pair.at_resolution(n);
    const auto plus = discrepancy(projected.plus(), pair.plus());
    const auto minus = discrepancy(projected.minus(), pair.minus());
    KernelDiscrepancy row;
    row.resolution = n;
    row.sup_time_l1_plus = plus.sup_time_l1;
    row.sup_time_l1_minus = minus.sup_time_l1;
    row.lp_plus = plus.lp;
    row.lp_minus = minus.lp;
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      if (row.sup_time_l1_plus > prev.sup_time_l1_plus + 1e-15 ||
          row.sup_time_l1_minus > prev.sup_time_l1_minus + 1e-15) {
        report.discrepancies_nonincreasing = false;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace tgraphon
