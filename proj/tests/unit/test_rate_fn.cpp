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


#include <cmath>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "tgraphon/rate_function.hpp"

using namespace tgraphon;
using tgraphon::testing::random_graphon;
using tgraphon::testing::random_grid;
using tgraphon::testing::uniform_matrix;

namespace {

KernelPair random_pair(std::mt19937_64& rng, int k, std::size_t slabs, double lo = 0.2, double hi = 4.0) {
  const TimeGrid grid = random_grid(rng, slabs);
  std::vector<Eigen::MatrixXd> plus;
  std::vector<Eigen::MatrixXd> minus;
  for (std::size_t m = 0; m < slabs; ++m) {
    plus.push_back(uniform_matrix(rng, k, lo, hi));
    minus.push_back(uniform_matrix(rng, k, lo, hi));
  }
  return KernelPair(TemporalKernel(grid, plus, lo, hi), TemporalKernel(grid, minus, lo, hi));
}

KernelPair homogeneous_pair(std::mt19937_64& rng, int k, std::size_t slabs) {
  const TimeGrid grid = random_grid(rng, slabs);
  const Eigen::MatrixXd p = uniform_matrix(rng, k, 0.2, 4.0);
  const Eigen::MatrixXd q = uniform_matrix(rng, k, 0.2, 4.0);
  return KernelPair(TemporalKernel(grid, std::vector<Eigen::MatrixXd>(slabs, p), 0.2, 4.0),
                    TemporalKernel(grid, std::vector<Eigen::MatrixXd>(slabs, q), 0.2, 4.0));
}

/// Brute-force oracle for one cell with two slabs: scan the first slab's value
/// on a 1/200 grid; the constraint fixes the second.
double grid_search(double w1, double bp1, double bm1, double bp2, double bm2, double f) {
  const double w2 = 1.0 - w1;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 200; ++k) {
    const double u1 = k / 200.0;
    const double u2 = (f - w1 * u1) / w2;
    if (u2 < 0.0 || u2 > 1.0) {
      continue;
    }
    const double c1 = std::sqrt(bp1 * (1 - u1)) - std::sqrt(bm1 * u1);
    const double c2 = std::sqrt(bp2 * (1 - u2)) - std::sqrt(bm2 * u2);
    best = std::min(best, w1 * c1 * c1 + w2 * c2 * c2);
  }
  return best;
}

}  // namespace

TEST_CASE("path rate examples") {
  const auto unit = KernelPair::constant(1.0, 1.0);
  CHECK(path_rate(TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 1.0)), unit) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto two_one = KernelPair::constant(2.0, 1.0);
  CHECK(path_rate(TemporalStepGraphon::constant_in_time(StepGraphon::constant(3, 1.0 / 3.0)), two_one) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pair = random_pair(rng, 3, 4);
    CHECK(path_rate(mean_field(pair).w, pair) == doctest::Approx(0.0).epsilon(1e-14));
    // Mixed resolutions are handled through the common refinement.
    const auto phi = TemporalStepGraphon::constant_in_time(random_graphon(rng, 2));
    CHECK(path_rate(phi, pair) > 0.0);
  }
  CHECK_THROWS(path_rate(TemporalStepGraphon::constant_in_time(StepGraphon::constant(4093, 0.5)),
                         KernelPair::constant(1.0, 1.0, 4091)));
}

TEST_CASE("homogeneous rate examples") {
  CHECK(std::abs(homogeneous_rate(StepGraphon::constant(1, 0.8), KernelPair::constant(1.0, 1.0)) - 0.2) < 1e-12);
  CHECK(std::abs(homogeneous_rate(StepGraphon::constant(2, 1.0 / 3.0), KernelPair::constant(2.0, 1.0)) - 1.0 / 3.0) <
        1e-12);
  std::mt19937_64 rng(2);
  const auto pair = homogeneous_pair(rng, 3, 1);
  CHECK(homogeneous_rate(mean_field(pair).w_star, pair) == doctest::Approx(0.0).epsilon(1e-14));
  const TimeGrid grid({0.0, 0.5, 1.0});
  const KernelPair varying(TemporalKernel::piecewise_in_time(grid, {1.0, 3.0}), TemporalKernel::constant(1.0));
  CHECK_THROWS_AS(homogeneous_rate(StepGraphon::constant(1, 0.5), varying), std::invalid_argument);
}

TEST_CASE("slab minimizer is the stationary point") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rate(0.1, 5.0);
  std::uniform_real_distribution<double> mult(-30.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double bp = rate(rng);
    const double bm = rate(rng);
    const double lambda = mult(rng);
    const double u = slab_minimizer(bp, bm, lambda);
    const double best = slab_cost(u, bp, bm) - lambda * u;
    for (int k = 0; k <= 1000; ++k) {
      const double v = k / 1000.0;
      CHECK(best <= slab_cost(v, bp, bm) - lambda * v + 1e-12);
    }
  }
  CHECK(slab_minimizer(2.0, 1.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("slab cost is convex") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> rate(0.05, 6.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int slab = 0; slab < 10; ++slab) {
    const double bp = rate(rng);
    const double bm = rate(rng);
    for (int k = 0; k < 200; ++k) {
      const double u1 = unit(rng);
      const double u2 = unit(rng);
      const double l = unit(rng);
      CHECK(slab_cost(l * u1 + (1 - l) * u2, bp, bm) <=
            l * slab_cost(u1, bp, bm) + (1 - l) * slab_cost(u2, bp, bm) + 1e-12);
    }
  }
}

TEST_CASE("variational rate collapses to the homogeneous rate") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 4;
    const auto pair = homogeneous_pair(rng, n, 8);
    const auto f = random_graphon(rng, n);
    const auto sol = variational_rate(f, pair);
    CHECK(sol.converged);
    CHECK(std::abs(sol.value - homogeneous_rate(f, pair)) < 1e-6);
    CHECK(sol.constraint_residual <= 1e-8);
    for (std::size_t m = 0; m < sol.minimizer.slab_count(); ++m) {
      CHECK((sol.minimizer.slab(m).values() - f.values()).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("variational rate on two-slab cells matches a grid search") {
  const TimeGrid half({0.0, 0.5, 1.0});
  const KernelPair pair(TemporalKernel::piecewise_in_time(half, {1.0, 3.0}), TemporalKernel::constant(1.0));
  const auto sol = variational_rate(StepGraphon::constant(1, 0.5), pair);
  const double oracle = grid_search(0.5, 1.0, 1.0, 3.0, 1.0, 0.5);
  CHECK(sol.value <= oracle + 1e-12);
  CHECK(std::abs(sol.value - oracle) < 1e-4);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> rate(0.3, 4.0);
  std::uniform_real_distribution<double> cut(0.2, 0.8);
  std::uniform_real_distribution<double> level(0.05, 0.95);
  for (int trial = 0; trial < 5; ++trial) {
    const double t1 = cut(rng);
    const double bp1 = rate(rng);
    const double bp2 = rate(rng);
    const double bm1 = rate(rng);
    const double bm2 = rate(rng);
    const double f = level(rng);
    const TimeGrid grid({0.0, t1, 1.0});
    const KernelPair p(TemporalKernel::piecewise_in_time(grid, {bp1, bp2}),
                       TemporalKernel::piecewise_in_time(grid, {bm1, bm2}));
    const auto s = variational_rate(StepGraphon::constant(1, f), p);
    const double o = grid_search(t1, bp1, bm1, bp2, bm2, f);
    CHECK(s.value <= o + 1e-12);
    CHECK(std::abs(s.value - o) < 1e-4);
  }
}

TEST_CASE("zero set of the variational rate") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pair = random_pair(rng, 2, 3);
    const auto mf = mean_field(pair);
    const auto at_star = variational_rate(mf.w_star, pair);
    CHECK(at_star.value <= 1e-10);
    for (std::size_t m = 0; m < at_star.minimizer.slab_count(); ++m) {
      CHECK((at_star.minimizer.slab(m).values() - mf.w.on_grid(at_star.minimizer.grid()).slab(m).values())
                .cwiseAbs()
                .maxCoeff() < 1e-8);
    }
    Eigen::MatrixXd shifted = mf.w_star.values();
    shifted(0, 1) = std::clamp(shifted(0, 1) + 1e-6, 0.0, 1.0);
    CHECK(variational_rate(StepGraphon(shifted), pair).value > 0.0);
    shifted(1, 0) = shifted(1, 0) > 0.5 ? shifted(1, 0) - 0.2 : shifted(1, 0) + 0.2;
    CHECK(variational_rate(StepGraphon(shifted), pair).value > 1e-4);
  }
}

TEST_CASE("feasible paths never beat the variational rate") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pair = random_pair(rng, 2, 2);
    const auto f = random_graphon(rng, 2);
    const double value = variational_rate(f, pair).value;
    // Two-slab perturbations that keep the time average equal to f.
    const double w1 = pair.grid().width(0);
    const double w2 = pair.grid().width(1);
    Eigen::MatrixXd a(2, 2);
    Eigen::MatrixXd b(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double lo = std::max(0.0, (f(i, j) - w2) / w1);
        const double hi = std::min(1.0, f(i, j) / w1);
        a(i, j) = lo + (hi - lo) * unit(rng);
        b(i, j) = std::clamp((f(i, j) - w1 * a(i, j)) / w2, 0.0, 1.0);
      }
    }
    const TemporalStepGraphon phi(pair.grid(), {StepGraphon(a), StepGraphon(b)});
    CHECK(value <= path_rate(phi, pair) + 1e-10);
  }
}

TEST_CASE("boundary targets take the constant path") {
  const TimeGrid half({0.0, 0.5, 1.0});
  const KernelPair pair(TemporalKernel::piecewise_in_time(half, {1.0, 3.0}), TemporalKernel::constant(2.0));
  const auto ones = variational_rate(StepGraphon::constant(1, 1.0), pair);
  CHECK(ones.value == doctest::Approx(2.0));
  CHECK(ones.minimizer.slab(0)(0, 0) == 1.0);
  const auto zeros = variational_rate(StepGraphon::constant(1, 0.0), pair);
  CHECK(zeros.value == doctest::Approx(2.0));
  CHECK(zeros.constraint_residual == 0.0);
}

TEST_CASE("zeta and its controls") {
  CHECK(zeta(0.0, 2.5, 1.0).value == doctest::Approx(2.5));
  CHECK(zeta(0.0, 2.5, 1.0).a_plus == 0.0);
  CHECK(zeta(1.0, 2.5, 1.0).a_minus == 0.0);
  const auto half = zeta(0.5, 1.0, 1.0);
  CHECK(half.value == 0.0);
  CHECK(half.a_plus == 1.0);
  CHECK(half.a_minus == 1.0);
  const auto high = zeta(0.8, 1.0, 1.0);
  CHECK(high.value == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(high.a_plus == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(high.a_minus == doctest::Approx(0.5).epsilon(1e-15));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::uniform_real_distribution<double> rate(0.1, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double h = unit(rng);
    const double bp = rate(rng);
    const double bm = rate(rng);
    const auto z = zeta(h, bp, bm);
    CHECK(std::abs(z.a_plus * bp * (1 - h) - z.a_minus * bm * h) < 1e-12);
  }
  CHECK_THROWS_AS(zeta(0.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("rate perturbation envelope") {
  const auto a = KernelPair::constant(1.0, 2.0, 2);
  CHECK(rate_perturbation_bound(a, a) == 0.0);
  const double eps = 0.3;
  const auto b = KernelPair::constant(1.0 + eps, 2.0 + eps, 2);
  CHECK(rate_perturbation_bound(a, b) ==
        doctest::Approx(2 * eps + 2.0 * (std::sqrt(1.3 * 2.3) - std::sqrt(2.0))).epsilon(1e-14));

  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pa = random_pair(rng, 2, 3);
    const auto pb = random_pair(rng, 3, 2);
    const double bound = rate_perturbation_bound(pa, pb);
    for (int k = 0; k < 50; ++k) {
      const TemporalStepGraphon phi(random_grid(rng, 2), {random_graphon(rng, 3), random_graphon(rng, 3)});
      CHECK(std::abs(path_rate(phi, pa) - path_rate(phi, pb)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("dynamical rate adds the initial cost") {
  std::mt19937_64 rng(11);
  const auto pair = random_pair(rng, 2, 2);
  CHECK(dynamical_rate(mean_field(pair).w, 0.0, pair) == doctest::Approx(0.0).epsilon(1e-14));
  const TemporalStepGraphon phi(random_grid(rng, 3),
                                {random_graphon(rng, 2), random_graphon(rng, 2), random_graphon(rng, 2)});
  CHECK(dynamical_rate(phi, 0.0, pair) == path_rate(phi, pair));
  CHECK(dynamical_rate(phi, 0.75, pair) == doctest::Approx(path_rate(phi, pair) + 0.75));
  CHECK_THROWS_AS(dynamical_rate(phi, -1.0, pair), std::invalid_argument);
}
