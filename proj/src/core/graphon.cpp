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

#include "tgraphon/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tgraphon/error.hpp"

namespace tgraphon {

TimeGrid::TimeGrid() : breakpoints_{0.0, 1.0} {}

TimeGrid::TimeGrid(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("time grid must start at 0 and end at 1");
  }
  for (std::size_t m = 1; m < breakpoints_.size(); ++m) {
    if (!(breakpoints_[m] > breakpoints_[m - 1])) {
      throw std::invalid_argument("time grid breakpoints must be strictly increasing");
    }
  }
}

TimeGrid TimeGrid::uniform(std::size_t slabs) {
  if (slabs == 0) {
    throw std::invalid_argument("uniform time grid needs at least one slab");
  }
  std::vector<double> points(slabs + 1);
  for (std::size_t m = 0; m <= slabs; ++m) {
    points[m] = static_cast<double>(m) / static_cast<double>(slabs);
  }
  points.back() = 1.0;
  return TimeGrid(std::move(points));
}

std::size_t TimeGrid::slab_at(double t) const {
  // First breakpoint >= t closes the slab that contains t.
  const auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  if (it == breakpoints_.end()) {
    return slab_count() - 1;
  }
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

bool TimeGrid::refines(const TimeGrid& coarse) const {
  return std::includes(breakpoints_.begin(), breakpoints_.end(), coarse.breakpoints_.begin(),
                       coarse.breakpoints_.end());
}

TimeGrid TimeGrid::merge(const TimeGrid& a, const TimeGrid& b) {
  std::vector<double> merged;
  merged.reserve(a.breakpoints_.size() + b.breakpoints_.size());
  std::set_union(a.breakpoints_.begin(), a.breakpoints_.end(), b.breakpoints_.begin(), b.breakpoints_.end(),
                 std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return TimeGrid(std::move(merged));
}

StepGraphon::StepGraphon(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.rows() != values_.cols()) {
    throw std::invalid_argument("step graphon must be a non-empty square matrix");
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      const double v = values_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("step graphon entry outside [0,1]: " + std::to_string(v));
      }
    }
  }
}

StepGraphon StepGraphon::constant(int n, double value) {
  if (n <= 0) {
    throw std::invalid_argument("resolution must be positive");
  }
  return StepGraphon(Eigen::MatrixXd::Constant(n, n, value));
}

TemporalStepGraphon::TemporalStepGraphon(TimeGrid grid, std::vector<StepGraphon> slabs)
    : grid_(std::move(grid)), slabs_(std::move(slabs)) {
  if (slabs_.size() != grid_.slab_count()) {
    throw DimensionMismatch("temporal graphon needs one slab per grid interval");
  }
  for (const auto& s : slabs_) {
    if (s.resolution() != slabs_.front().resolution()) {
      throw DimensionMismatch("temporal graphon slabs differ in resolution");
    }
  }
}

TemporalStepGraphon TemporalStepGraphon::constant_in_time(StepGraphon value) {
  return TemporalStepGraphon(TimeGrid{}, {std::move(value)});
}

TemporalStepGraphon TemporalStepGraphon::on_grid(const TimeGrid& finer) const {
  if (!finer.refines(grid_)) {
    throw DimensionMismatch("target grid does not refine the path's grid");
  }
  std::vector<StepGraphon> out;
  out.reserve(finer.slab_count());
  for (std::size_t m = 0; m < finer.slab_count(); ++m) {
    out.push_back(slabs_[grid_.slab_at(0.5 * (finer.begin(m) + finer.end(m)))]);
  }
  return TemporalStepGraphon(finer, std::move(out));
}

Eigen::MatrixXd overlap_weights(int n, int k) {
  if (n <= 0 || k <= 0) {
    throw std::invalid_argument("resolutions must be positive");
  }
  // Interval i of resolution n is [i k, (i+1) k] in units of 1/(n k).
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < n; ++i) {
    const long lo = static_cast<long>(i) * k;
    const long hi = lo + k;
    const int first = static_cast<int>(lo / n);
    for (int u = first; u < k; ++u) {
      const long ulo = static_cast<long>(u) * n;
      if (ulo >= hi) {
        break;
      }
      const long overlap = std::min(hi, ulo + n) - std::max(lo, ulo);
      if (overlap > 0) {
        p(i, u) = static_cast<double>(overlap) / static_cast<double>(k);
      }
    }
  }
  return p;
}

Eigen::MatrixXd resample_blocks(const Eigen::MatrixXd& values, int n) {
  const int k = static_cast<int>(values.rows());
  if (k == n) {
    return values;
  }
  const Eigen::MatrixXd p = overlap_weights(n, k);
  return p * values * p.transpose();
}

Eigen::VectorXd resample_blocks(const Eigen::VectorXd& values, int n) {
  const int k = static_cast<int>(values.size());
  if (k == n) {
    return values;
  }
  return overlap_weights(n, k) * values;
}

namespace {

Eigen::MatrixXd clamp_unit(Eigen::MatrixXd m) { return m.cwiseMax(0.0).cwiseMin(1.0); }

}  // namespace

StepGraphon resample(const StepGraphon& f, int n) {
  if (n == f.resolution()) {
    return f;
  }
  return StepGraphon(clamp_unit(resample_blocks(f.values(), n)));
}

StepGraphon block_project(const StepGraphon& f, int k) {
  if (k <= 0 || f.resolution() % k != 0) {
    throw std::invalid_argument("block projection needs k dividing the resolution");
  }
  return resample(f, k);
}

StepGraphon time_average(const TemporalStepGraphon& path) {
  const int n = path.resolution();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t m = 0; m < path.slab_count(); ++m) {
    acc += path.grid().width(m) * path.slab(m).values();
  }
  return StepGraphon(clamp_unit(std::move(acc)));
}

int common_resolution(int a, int b, int cap) {
  if (a <= 0 || b <= 0) {
    throw std::invalid_argument("resolutions must be positive");
  }
  const long l = std::lcm(static_cast<long>(a), static_cast<long>(b));
  if (l > cap) {
    throw DimensionMismatch("no common block grid for resolutions " + std::to_string(a) + " and " +
                            std::to_string(b));
  }
  return static_cast<int>(l);
}

}  // namespace tgraphon
