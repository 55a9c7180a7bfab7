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
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "tgraphon/error.hpp"
#include "tgraphon/netdyn.hpp"

using namespace tgraphon;

namespace {

std::vector<double> grid_of(int points) {
  std::vector<double> g;
  for (int k = 0; k <= points; ++k) {
    g.push_back(static_cast<double>(k) / points);
  }
  return g;
}

EdgeTrajectorySet frozen(int n, std::uint8_t state) {
  return EdgeTrajectorySet(n, 1.0, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, state),
                           std::vector<std::vector<double>>(static_cast<std::size_t>(n) * n), 0);
}

Eigen::VectorXd linear_field(int m) {
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) {
    z(i) = std::sin(3.0 * (i + 0.5) / m);
  }
  return z;
}

FunctionalSpec constant_drift(double c, double d) {
  return FunctionalSpec([c](std::span<const double>, double, double) { return c; },
                        [d](std::span<const double>, double, double, double) { return d; },
                        std::max({std::abs(c), std::abs(d), 1e-3}));
}

/// Random bounded spec: tanh couplings of random kernel convolutions.
ConvolutionSpec random_spec(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  const double s1 = scale(rng);
  const double s2 = scale(rng);
  BinaryMap d0{[s1](double x, double y, double t) { return s1 * std::tanh(x - 0.5 * y + t); }, s1, s1, 0.5 * s1};
  ScalarMap f0{[s2](double x, double t) { return s2 * std::sin(x + t); }, s2, s2};
  return ConvolutionSpec(tgraphon::testing::uniform_matrix(rng, k, -1.0, 1.0),
                         tgraphon::testing::uniform_matrix(rng, k, -1.0, 1.0),
                         tgraphon::testing::uniform_matrix(rng, k, -1.0, 1.0), d0, f0);
}

}  // namespace

TEST_CASE("constant drift is integrated exactly") {
  const auto spec = constant_drift(0.7, 0.0);
  const Eigen::VectorXd z = linear_field(6);
  const auto grid = grid_of(10);
  const auto particles = integrate_particles(frozen(6, 0), spec, z, grid);
  const auto continuum = continuum_solve(TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 0.4)), spec,
                                         z, 6, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXd expected = z.array() + 0.7 * grid[k];
    CHECK((particles.values[k] - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((continuum.values[k] - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unit interaction on a complete graph adds t") {
  const auto spec = constant_drift(0.0, 1.0);
  const Eigen::VectorXd z = linear_field(5);
  const auto grid = grid_of(4);
  const auto particles = integrate_particles(frozen(5, 1), spec, z, grid);
  const auto continuum =
      continuum_solve(TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 1.0)), spec, z, 5, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXd expected = z.array() + grid[k];
    CHECK((particles.values[k] - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((continuum.values[k] - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  // An empty graph has no interaction at all.
  const auto empty = integrate_particles(frozen(5, 0), spec, z, grid);
  CHECK((empty.values.back() - z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph jumps switch the interaction at the exact times") {
  // One edge (0,1) created at t = 0.3 and deleted at t = 0.8 under D = 1:
  // particle 0 gains (1/2)(0.8 - 0.3).
  const EdgeTrajectorySet s(2, 1.0, {0, 0, 0, 0}, {{}, {0.3, 0.8}, {}, {}}, 0);
  const auto spec = constant_drift(0.0, 1.0);
  const auto path = integrate_particles(s, spec, Eigen::VectorXd::Zero(2), {0.0, 0.5, 1.0});
  CHECK(path.values[1](0) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(path.values[2](0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(path.values[2](1) == 0.0);
}

TEST_CASE("bound violations are reported") {
  const FunctionalSpec wild([](std::span<const double>, double, double) { return 2.0; },
                            [](std::span<const double>, double, double, double) { return 0.0; }, 1.0);
  CHECK_THROWS_AS(integrate_particles(frozen(2, 0), wild, Eigen::VectorXd::Zero(2), {0.0, 1.0}), SpecViolation);
  const FunctionalSpec strong([](std::span<const double>, double, double) { return 0.0; },
                              [](std::span<const double>, double, double, double) { return -3.0; }, 1.0);
  CHECK_THROWS_AS(continuum_solve(TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 1.0)), strong,
                                  Eigen::VectorXd::Zero(2), 2, {0.0, 1.0}),
                  SpecViolation);
  CHECK_THROWS_AS(integrate_particles(frozen(2, 0), wild, Eigen::VectorXd::Zero(3), {0.0, 1.0}), DimensionMismatch);
  CHECK_THROWS_AS(integrate_particles(frozen(2, 0), wild, Eigen::VectorXd::Zero(2), {0.5, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("Kuramoto fast path matches the pairwise evaluation") {
  const KuramotoSpec spec(0.8, [](double x) { return 0.5 * std::cos(2 * M_PI * x); }, 0.5);
  CHECK(spec.regularity() == doctest::Approx(1.6));
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd w = tgraphon::testing::uniform_matrix(rng, 7);
  const Eigen::VectorXd u = linear_field(7) * 4.0;
  Eigen::VectorXd fast(7);
  spec.rate_of_change({u.data(), 7}, 0.3, w, {fast.data(), 7});
  Eigen::VectorXd slow(7);
  spec.DynamicsSpec::rate_of_change({u.data(), 7}, 0.3, w, {slow.data(), 7});
  CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("continuum solver converges at second order") {
  // L = 2 gives windows of length 1/8, so these steps halve every cell exactly.
  std::mt19937_64 rng(3);
  const KuramotoSpec spec(1.0, [](double x) { return 2.0 * std::sin(2 * M_PI * x); }, 2.0);
  const TemporalStepGraphon w(TimeGrid({0.0, 0.5, 1.0}),
                              {tgraphon::testing::random_graphon(rng, 4), tgraphon::testing::random_graphon(rng, 4)});
  const Eigen::VectorXd z = linear_field(8) * 3.0;
  const std::vector<double> out{0.0, 0.5, 1.0};
  std::vector<Eigen::VectorXd> finals;
  for (const double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    finals.push_back(continuum_solve(w, spec, z, 8, out, ContinuumOptions{h}).values.back());
  }
  const double coarse = field_norm(finals[0] - finals[1]);
  const double fine = field_norm(finals[1] - finals[2]);
  CHECK(fine > 0.0);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("RK4 and step-halved RK4 agree") {
  std::mt19937_64 rng(4);
  const auto spec = random_spec(rng, 3);
  const Eigen::VectorXd z = linear_field(6);
  const auto grid = grid_of(5);
  const auto coarse = integrate_particles(frozen(6, 1), spec, z, grid, ParticleOptions{1e-2});
  const auto fine = integrate_particles(frozen(6, 1), spec, z, grid, ParticleOptions{5e-3});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(field_norm(coarse.values[k] - fine.values[k]) <= 1e-6);
  }
}

TEST_CASE("Picard probes") {
  const auto w = TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 0.5));
  const auto constant = constant_drift(0.4, 0.0);
  const auto p = picard_contraction_probe(w, constant, linear_field(4), 0.5);
  REQUIRE(p.gaps.size() >= 2);
  CHECK(p.gaps[0] == doctest::Approx(0.2));
  CHECK(p.gaps[1] == 0.0);
  CHECK(p.contraction_holds);
  CHECK_THROWS_AS(picard_contraction_probe(w, constant, linear_field(4), 1.0), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto spec = random_spec(rng, 3);
    const double window = std::min(1.0 / (4.0 * spec.regularity()), 1.0);
    const TemporalStepGraphon rw(TimeGrid({0.0, window / 3.0, 1.0}), {tgraphon::testing::random_graphon(rng, 3),
                                                                        tgraphon::testing::random_graphon(rng, 3)});
    const auto probe = picard_contraction_probe(rw, spec, linear_field(6) * 2.0, window);
    CHECK(probe.contraction_holds);
    CHECK(probe.gaps.back() <= 1e-10);
  }
}

TEST_CASE("solution-class bounds hold for produced fields") {
  std::mt19937_64 rng(6);
  const auto spec = random_spec(rng, 4);
  const Eigen::VectorXd z = linear_field(8) * 3.0;
  const auto grid = grid_of(20);
  const auto w = TemporalStepGraphon::constant_in_time(tgraphon::testing::random_graphon(rng, 4));
  const auto continuum = continuum_solve(w, spec, z, 8, grid);
  const auto report = check_solution_class(continuum);
  CHECK(report.passed);
  CHECK(report.norm_bound == doctest::Approx(field_norm(z) + 2.0 * spec.regularity()));

  // A hand-made path that moves too fast is rejected.
  FieldPath fast{{0.0, 0.1}, {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Constant(2, 1.0)}, 0.0, 1.0};
  CHECK_FALSE(check_solution_class(fast).passed);
}

TEST_CASE("Haar weak norm") {
  const WeakNormBasis basis;
  CHECK(basis.terms() == 16);
  CHECK((basis.gram() - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
  // Block integrals at resolution 16 reproduce the exact inner products.
  const Eigen::MatrixXd b = basis.block_integrals(16);
  CHECK((b * b.transpose() * 16.0 - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXd u = linear_field(8);
  CHECK(weak_distance(u, u, basis) == 0.0);
  CHECK(weak_distance(Eigen::VectorXd::Ones(4), Eigen::VectorXd::Zero(8), basis) == doctest::Approx(0.5));
  // Second basis function: +1 on [0,1/2), -1 on [1/2,1); weight 1/4.
  Eigen::VectorXd haar(4);
  haar << 1.0, 1.0, -1.0, -1.0;
  CHECK(weak_distance(haar, Eigen::VectorXd::Zero(4), basis) == doctest::Approx(0.25));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd a(32);
    Eigen::VectorXd c(16);
    for (auto& v : a) {
      v = normal(rng);
    }
    for (auto& v : c) {
      v = normal(rng);
    }
    Eigen::VectorXd c_fine(32);
    for (int i = 0; i < 32; ++i) {
      c_fine(i) = c(i / 2);
    }
    CHECK(weak_distance(a, c, basis) <= field_norm(a - c_fine) + 1e-12);
  }
  CHECK_THROWS_AS(weak_distance(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4), basis), DimensionMismatch);
}

TEST_CASE("convolution spec") {
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
  const ScalarMap clipped_identity{[](double s, double) { return std::clamp(s, -2.0, 2.0); }, 2.0, 1.0};
  const BinaryMap zero{[](double, double, double) { return 0.0; }, 0.0, 0.0, 0.0};
  const ConvolutionSpec spec(ones, ones, ones, zero, clipped_identity);
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(6, 0.7);
  CHECK((spec.convolve(3, {c.data(), 6}).array() - 0.7).abs().maxCoeff() < 1e-15);

  const Eigen::VectorXd psi = linear_field(6);
  Eigen::VectorXd drift(6);
  Eigen::MatrixXd interaction(6, 6);
  spec.evaluate({psi.data(), 6}, 0.0, {drift.data(), 6}, interaction);
  CHECK((drift.array() - psi.mean()).abs().maxCoeff() < 1e-15);

  // Finite-difference probing of the Lipschitz modulus in the field.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const auto random = random_spec(rng, 4);
    for (int k = 0; k < 40; ++k) {
      Eigen::VectorXd a(8);
      Eigen::VectorXd b(8);
      for (int i = 0; i < 8; ++i) {
        a(i) = normal(rng);
        b(i) = a(i) + 0.1 * normal(rng);
      }
      Eigen::VectorXd fa(8);
      Eigen::VectorXd fb(8);
      Eigen::MatrixXd da(8, 8);
      Eigen::MatrixXd db(8, 8);
      random.evaluate({a.data(), 8}, 0.2, {fa.data(), 8}, da);
      random.evaluate({b.data(), 8}, 0.2, {fb.data(), 8}, db);
      const double dist = field_norm(a - b);
      CHECK((fa - fb).cwiseAbs().maxCoeff() <= random.regularity() * dist + 1e-12);
      CHECK((da - db).cwiseAbs().maxCoeff() <= random.regularity() * dist + 1e-12);
      CHECK(fa.cwiseAbs().maxCoeff() <= random.regularity());
    }
  }
}

TEST_CASE("field CSV output") {
  FieldPath p{{0.0, 0.5}, {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2)}, 0.0, 1.0};
  std::stringstream ss;
  write_field_csv(ss, p);
  CHECK(ss.str() == "t,index,value\n0,0,0\n0,1,0\n0.5,0,1\n0.5,1,1\n");
}
