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

#include "tgraphon/error.hpp"
#include "tgraphon/simulation.hpp"

namespace tgraphon {

namespace {

TemporalKernel kernel_from_slabs(const TimeGrid& grid, std::vector<Eigen::MatrixXd> slabs) {
  double lo = slabs.front().minCoeff();
  double hi = slabs.front().maxCoeff();
  for (const auto& s : slabs) {
    lo = std::min(lo, s.minCoeff());
    hi = std::max(hi, s.maxCoeff());
  }
  return TemporalKernel(grid, std::move(slabs), lo, hi);
}

}  // namespace

TiltPlan::TiltPlan(KernelPair base, TemporalStepGraphon target, TemporalKernel alpha_plus, TemporalKernel alpha_minus,
                   TemporalKernel upsilon_plus, TemporalKernel upsilon_minus)
    : base_(std::move(base)),
      target_(std::move(target)),
      alpha_plus_(std::move(alpha_plus)),
      alpha_minus_(std::move(alpha_minus)),
      upsilon_plus_(std::move(upsilon_plus)),
      upsilon_minus_(std::move(upsilon_minus)) {}

TiltPlan TiltPlan::identity(const KernelPair& pair) {
  const int k = pair.resolution();
  std::vector<Eigen::MatrixXd> ones(pair.grid().slab_count(), Eigen::MatrixXd::Ones(k, k));
  TemporalKernel unit(pair.grid(), ones, 1.0, 1.0);
  return TiltPlan(pair, mean_field(pair).w, unit, unit, pair.plus(), pair.minus());
}

TiltPlan make_tilt(const KernelPair& pair, const TemporalStepGraphon& target, double clip) {
  if (!(clip > 0.0 && clip < 0.5)) {
    throw std::invalid_argument("tilt clip must lie in (0, 1/2)");
  }
  if (target.resolution() != pair.resolution()) {
    throw DimensionMismatch("tilt target resolution differs from the kernel pair");
  }
  if (!(pair.plus().min_rate() > 0.0 && pair.minus().min_rate() > 0.0)) {
    throw std::invalid_argument("tilting needs strictly positive rates");
  }
  const TimeGrid grid = TimeGrid::merge(pair.grid(), target.grid());
  const KernelPair base = pair.on_grid(grid);
  const TemporalStepGraphon phi_path = target.on_grid(grid);

  std::vector<Eigen::MatrixXd> ap;
  std::vector<Eigen::MatrixXd> am;
  std::vector<Eigen::MatrixXd> up;
  std::vector<Eigen::MatrixXd> um;
  std::vector<StepGraphon> clipped;
  for (std::size_t m = 0; m < grid.slab_count(); ++m) {
    const Eigen::ArrayXXd phi = phi_path.slab(m).values().array().max(clip).min(1.0 - clip);
    const Eigen::ArrayXXd bp = base.plus().slab(m).array();
    const Eigen::ArrayXXd bm = base.minus().slab(m).array();
    const Eigen::ArrayXXd alpha_plus = (phi * bm / ((1.0 - phi) * bp)).sqrt();
    const Eigen::ArrayXXd alpha_minus = ((1.0 - phi) * bp / (phi * bm)).sqrt();
    ap.emplace_back(alpha_plus.matrix());
    am.emplace_back(alpha_minus.matrix());
    up.emplace_back((alpha_plus * bp).matrix());
    um.emplace_back((alpha_minus * bm).matrix());
    clipped.emplace_back(phi.matrix());
  }
  return TiltPlan(base, TemporalStepGraphon(grid, std::move(clipped)), kernel_from_slabs(grid, std::move(ap)),
                  kernel_from_slabs(grid, std::move(am)), kernel_from_slabs(grid, std::move(up)),
                  kernel_from_slabs(grid, std::move(um)));
}

double TiltPlan::balance_residual() const {
  double worst = 0.0;
  for (std::size_t m = 0; m < grid().slab_count(); ++m) {
    const Eigen::ArrayXXd phi = target_.slab(m).values().array();
    const Eigen::ArrayXXd lhs = upsilon_plus_.slab(m).array() * (1.0 - phi);
    const Eigen::ArrayXXd rhs = upsilon_minus_.slab(m).array() * phi;
    worst = std::max(worst, (lhs - rhs).abs().maxCoeff());
  }
  return worst;
}

}  // namespace tgraphon
