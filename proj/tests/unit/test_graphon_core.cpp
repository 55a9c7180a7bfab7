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
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "tgraphon/cut_norm.hpp"
#include "tgraphon/error.hpp"
#include "tgraphon/graphon.hpp"
#include "tgraphon/io.hpp"
#include "tgraphon/motif.hpp"

using namespace tgraphon;
using tgraphon::testing::random_graphon;

namespace {

// Brute-force oracles: enumerate both sign vectors / both subsets outright.
double brute_inf_to_one(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  double best = 0.0;
  for (int am = 0; am < (1 << n); ++am) {
    for (int bm = 0; bm < (1 << n); ++bm) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const int a = (am >> i) & 1 ? 1 : -1;
          const int b = (bm >> j) & 1 ? 1 : -1;
          total += a * b * d(i, j);
        }
      }
      best = std::max(best, total / (n * n));
    }
  }
  return best;
}

double brute_cut(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  double best = 0.0;
  for (int sm = 0; sm < (1 << n); ++sm) {
    for (int tm = 0; tm < (1 << n); ++tm) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (((sm >> i) & 1) && ((tm >> j) & 1)) {
            total += d(i, j);
          }
        }
      }
      best = std::max(best, std::abs(total) / (n * n));
    }
  }
  return best;
}

StepGraphon diag2() { return StepGraphon(Eigen::Matrix2d{{1.0, 0.0}, {0.0, 1.0}}); }

}  // namespace

TEST_CASE("step graphon rejects values outside the unit interval") {
  CHECK_THROWS_AS(StepGraphon(Eigen::Matrix2d{{0.0, 1.1}, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(StepGraphon(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("left-continuous slab lookup") {
  const TimeGrid grid({0.0, 0.25, 1.0});
  CHECK(grid.slab_at(0.0) == 0);
  CHECK(grid.slab_at(0.25) == 0);
  CHECK(grid.slab_at(0.2500001) == 1);
  CHECK(grid.slab_at(1.0) == 1);
  const TimeGrid merged = TimeGrid::merge(grid, TimeGrid::uniform(2));
  CHECK(merged.slab_count() == 3);
  CHECK(merged.refines(grid));
}

TEST_CASE("inf-to-one distance on constant and diagonal graphons") {
  for (const int n : {1, 3, 7}) {
    const auto r = inf_to_one_distance(StepGraphon::constant(n, 1.0), StepGraphon::constant(n, 0.0), CutMode::exact);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.certified);
  }
  std::mt19937_64 rng(3);
  const auto f = random_graphon(rng, 5);
  CHECK(inf_to_one_distance(f, f, CutMode::exact).value == 0.0);

  const auto r = inf_to_one_distance(diag2(), StepGraphon::constant(2, 0.5), CutMode::exact);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
  // Witness bookkeeping: the reported signs reproduce the value.
  const Eigen::Matrix2d d = diag2().values().array() - 0.5;
  double v = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      v += r.witness_a[i] * r.witness_b[j] * d(i, j);
    }
  }
  CHECK(v / 4.0 == doctest::Approx(0.5));
  CHECK(r.witness_a[0] * r.witness_a[1] == -1);
}

TEST_CASE("cut distance on the diagonal example") {
  CHECK(cut_distance(StepGraphon::constant(4, 1.0), StepGraphon::constant(4, 0.0)).value == doctest::Approx(1.0));
  // D = +-1/2 on the cells; the best rectangle is a single diagonal cell of
  // measure 1/4, so the value is (1/2)(1/4).
  const auto r = cut_distance(diag2(), StepGraphon::constant(2, 0.5));
  CHECK(r.value == doctest::Approx(0.125));
  CHECK(r.certified);
}

TEST_CASE("exact searches agree with brute-force enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 6;
    const auto f = random_graphon(rng, n);
    const auto g = random_graphon(rng, n);
    const Eigen::MatrixXd d = f.values() - g.values();
    const auto inf = inf_to_one_distance(f, g, CutMode::exact);
    CHECK(inf.value == doctest::Approx(brute_inf_to_one(d)).epsilon(1e-12));
    CHECK(cut_distance(f, g).value == doctest::Approx(brute_cut(d)).epsilon(1e-12));
  }
}

TEST_CASE("metric axioms of the exact inf-to-one distance") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 7;
    const auto f = random_graphon(rng, n);
    const auto g = random_graphon(rng, n);
    const auto h = random_graphon(rng, n);
    const double fg = inf_to_one_distance(f, g, CutMode::exact).value;
    const double gf = inf_to_one_distance(g, f, CutMode::exact).value;
    const double gh = inf_to_one_distance(g, h, CutMode::exact).value;
    const double fh = inf_to_one_distance(f, h, CutMode::exact).value;
    CHECK(fg == doctest::Approx(gf).epsilon(1e-14));
    CHECK(fg > 0.0);
    CHECK(fh <= fg + gh + 1e-12);
    CHECK(inf_to_one_distance(f, f, CutMode::exact).value == 0.0);
  }
}

TEST_CASE("sandwich between cut and inf-to-one distances, heuristic below exact") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 11;
    const auto f = random_graphon(rng, n);
    const auto g = random_graphon(rng, n);
    const double cut = cut_distance(f, g).value;
    const double inf = inf_to_one_distance(f, g, CutMode::exact).value;
    CHECK(cut <= inf + 1e-12);
    CHECK(inf <= 4.0 * cut + 1e-12);
    const auto heur = inf_to_one_distance(f, g, CutMode::heuristic, {8, static_cast<std::uint64_t>(trial)});
    CHECK(heur.value <= inf + 1e-12);
    CHECK_FALSE(heur.certified);
  }
}

TEST_CASE("exact mode is refused above the enumeration cutoff") {
  const auto f = StepGraphon::constant(kExactCutResolution + 1, 0.3);
  CHECK_THROWS_AS(inf_to_one_distance(f, f, CutMode::exact), std::invalid_argument);
  CHECK_THROWS_AS(inf_to_one_distance(f, StepGraphon::constant(3, 0.3), CutMode::heuristic), DimensionMismatch);
  // Heuristic cut distance above the cutoff is flagged uncertified.
  CHECK_FALSE(cut_distance(f, StepGraphon::constant(kExactCutResolution + 1, 0.1)).certified);
}

TEST_CASE("relabeled cut distance is an upper bound that sees through permutations") {
  std::mt19937_64 rng(21);
  const auto f = random_graphon(rng, 6);
  std::vector<int> sigma{3, 0, 5, 1, 4, 2};
  const auto g = relabel(f, sigma);
  const auto r = relabeled_cut_distance(f, g);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.exhaustive);
  CHECK(relabeled_cut_distance(f, f).value == 0.0);

  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_graphon(rng, 4);
    const auto b = random_graphon(rng, 4);
    CHECK(relabeled_cut_distance(a, b).value <= cut_distance(a, b).value + 1e-14);
  }
  // Above the permutation cutoff the local search still recovers a relabeling.
  const auto big = random_graphon(rng, 10);
  std::vector<int> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[1], perm[7]);
  const auto rb = relabeled_cut_distance(big, relabel(big, perm));
  CHECK_FALSE(rb.exhaustive);
  CHECK(rb.value <= cut_distance(big, relabel(big, perm)).value);
}

TEST_CASE("homomorphism densities") {
  const auto p = StepGraphon::constant(3, 0.4);
  CHECK(homomorphism_density(p, DirectedMotif::single_edge()) == doctest::Approx(0.4));
  CHECK(homomorphism_density(p, DirectedMotif::directed_cycle(3)) == doctest::Approx(0.064));
  CHECK(homomorphism_density(diag2(), DirectedMotif::single_edge()) == doctest::Approx(0.5));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = random_graphon(rng, 2 + trial);
    CHECK(homomorphism_density(h, DirectedMotif::single_edge()) == doctest::Approx(h.mean()).epsilon(1e-14));
    // Directed 2-path: sum_{a,b,c} h(a,b) h(b,c) / n^3.
    const Eigen::MatrixXd& m = h.values();
    const double n = m.rows();
    const double path = (m * m).sum() / (n * n * n);
    CHECK(homomorphism_density(h, DirectedMotif::directed_path(3)) == doctest::Approx(path).epsilon(1e-13));
  }
  CHECK_THROWS_AS(DirectedMotif(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(DirectedMotif(2, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(DirectedMotif(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(homomorphism_density(StepGraphon::constant(257, 0.1), DirectedMotif::directed_cycle(9)),
                  std::invalid_argument);
}

TEST_CASE("time averages") {
  const auto f = StepGraphon::constant(2, 0.3);
  CHECK(time_average(TemporalStepGraphon::constant_in_time(f)) == f);
  const TemporalStepGraphon two(TimeGrid({0.0, 0.5, 1.0}), {StepGraphon::constant(3, 0.0), StepGraphon::constant(3, 1.0)});
  CHECK(time_average(two).values().isApproxToConstant(0.5));
  const TemporalStepGraphon three(TimeGrid({0.0, 0.25, 0.5, 1.0}),
                                  {StepGraphon::constant(2, 1.0), StepGraphon::constant(2, 0.0),
                                   StepGraphon::constant(2, 0.5)});
  CHECK(time_average(three).values().isApproxToConstant(0.5));
}

TEST_CASE("block projection") {
  std::mt19937_64 rng(9);
  const auto f = random_graphon(rng, 6);
  CHECK(block_project(f, 6) == f);
  CHECK(block_project(StepGraphon::constant(6, 0.7), 3).values().isApproxToConstant(0.7));
  Eigen::MatrixXd corner = Eigen::MatrixXd::Zero(4, 4);
  corner.topLeftCorner(2, 2).setOnes();
  const Eigen::Matrix2d expected{{1.0, 0.0}, {0.0, 0.0}};
  CHECK(block_project(StepGraphon(corner), 2).values() == expected);
  CHECK_THROWS_AS(block_project(f, 4), std::invalid_argument);
}

TEST_CASE("time averaging commutes with block projection") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    // Dyadic slab widths and block sizes keep every sum exact.
    const TimeGrid grid({0.0, 0.25, 0.5, 1.0});
    std::vector<StepGraphon> slabs;
    for (int m = 0; m < 3; ++m) {
      Eigen::MatrixXd v = tgraphon::testing::uniform_matrix(rng, 8);
      v = (v * 1024.0).array().round() / 1024.0;
      slabs.emplace_back(v);
    }
    const TemporalStepGraphon path(grid, slabs);
    std::vector<StepGraphon> projected;
    for (const auto& s : slabs) {
      projected.push_back(block_project(s, 4));
    }
    CHECK(block_project(time_average(path), 4) == time_average(TemporalStepGraphon(grid, projected)));
  }
}

TEST_CASE("overlap weights and resampling") {
  for (const auto [n, k] : {std::pair{6, 4}, std::pair{3, 7}, std::pair{8, 2}}) {
    const Eigen::MatrixXd p = overlap_weights(n, k);
    CHECK(p.rows() == n);
    CHECK(p.cols() == k);
    CHECK((p.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-14);
  }
  std::mt19937_64 rng(2);
  const auto f = random_graphon(rng, 3);
  // Refining then projecting back is the identity.
  CHECK(block_project(resample(f, 12), 3).values().isApprox(f.values(), 1e-14));
  // Resampling preserves the mean.
  CHECK(resample(f, 5).mean() == doctest::Approx(f.mean()).epsilon(1e-14));
  CHECK(common_resolution(4, 6) == 12);
  CHECK_THROWS(common_resolution(4093, 4091));
}

TEST_CASE("CSV and manifest round trips") {
  std::mt19937_64 rng(17);
  const auto f = random_graphon(rng, 5);
  std::stringstream ss;
  write_step_graphon_csv(ss, f);
  CHECK(read_step_graphon_csv(ss) == f);

  std::stringstream bad("n=2\n0.1,0.2\n0.3,x\n");
  CHECK_THROWS_AS(read_step_graphon_csv(bad), ConfigError);

  const auto dir = std::filesystem::temp_directory_path() / "tgraphon_core_io";
  const TemporalStepGraphon path(TimeGrid({0.0, 0.3, 1.0}), {f, random_graphon(rng, 5)});
  const auto manifest = save_temporal_graphon(dir, "phi", path);
  const auto back = load_temporal_graphon(manifest);
  CHECK(back.grid() == path.grid());
  CHECK(back.slab(1) == path.slab(1));
  std::filesystem::remove_all(dir);
}
