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


#ifndef TGRAPHON_NETDYN_HPP
#define TGRAPHON_NETDYN_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tgraphon/graphon.hpp"
#include "tgraphon/simulation.hpp"

/**
 * \file
 * \brief Node dynamics driven by the evolving graph and their continuum limit.
 *
 * A state field is a block function on [0,1] stored as one value per block;
 * particle i of an n-particle system is block i at resolution n. Drift and
 * interaction are evaluated at block midpoints x_i = (i + 1/2) / m. The right
 * hand side of both systems is
 *
 *     du_i/dt = F(u, t, x_i) + (1/m) sum_j A_ij(t) D(u, t, x_i, x_j),
 *
 * with A the adjacency indicators for particles and W(t) for the continuum.
 * The 2-norm of a field is the L^2([0,1]) norm, sqrt(mean of squares).
 */

namespace tgraphon {

double field_norm(const Eigen::VectorXd& u);

/// Drift F and interaction D, both bounded by the regularity constant L.
class DynamicsSpec {
 public:
  virtual ~DynamicsSpec() = default;

  /// L: bound on |F| and |D| and Lipschitz constant of both in the field (2-norm).
  [[nodiscard]] virtual double regularity() const = 0;

  /// drift[i] = F(u, t, x_i); interaction(i, j) = D(u, t, x_i, x_j); m = u.size().
  virtual void evaluate(std::span<const double> u, double t, std::span<double> drift,
                        Eigen::MatrixXd& interaction) const = 0;

  /// out[i] = F_i + (1/m) sum_j weights(i, j) D_ij.
  /**
   * Throws SpecViolation if any evaluated |F| or |D| exceeds L + 1e-9.
   */
  virtual void rate_of_change(std::span<const double> u, double t, const Eigen::MatrixXd& weights,
                              std::span<double> out) const;
};

/// Spec from plain callables evaluated pointwise at block midpoints.
class FunctionalSpec final : public DynamicsSpec {
 public:
  using Drift = std::function<double(std::span<const double> u, double t, double x)>;
  using Interaction = std::function<double(std::span<const double> u, double t, double x, double y)>;

  FunctionalSpec(Drift drift, Interaction interaction, double regularity);

  [[nodiscard]] double regularity() const override { return regularity_; }
  void evaluate(std::span<const double> u, double t, std::span<double> drift,
                Eigen::MatrixXd& interaction) const override;

 private:
  Drift drift_;
  Interaction interaction_;
  double regularity_;
};

/// Kuramoto-type dynamics: F = omega(x), D = clip(coupling sin(u(y) - u(x)), -L, L).
/**
 * L = max(2 coupling, sup |omega|): the interaction term moves by at most
 * 2 coupling ||du||_2 when the field moves by du.
 */
class KuramotoSpec final : public DynamicsSpec {
 public:
  KuramotoSpec(double coupling, std::function<double(double)> omega, double omega_bound);

  [[nodiscard]] double regularity() const override { return regularity_; }
  [[nodiscard]] double coupling() const { return coupling_; }
  void evaluate(std::span<const double> u, double t, std::span<double> drift,
                Eigen::MatrixXd& interaction) const override;
  /// Uses sin(b - a) = sin b cos a - cos b sin a, so no pairwise trigonometry.
  void rate_of_change(std::span<const double> u, double t, const Eigen::MatrixXd& weights,
                      std::span<double> out) const override;

 private:
  double coupling_;
  std::function<double(double)> omega_;
  double omega_bound_;
  double regularity_;
};

/// Bounded scalar map g(s, t) with Lipschitz constant in s.
struct ScalarMap {
  std::function<double(double, double)> fn;
  double bound = 0.0;
  double lipschitz = 0.0;
};

/// Bounded map g(s1, s2, t) with Lipschitz constants in s1 and s2.
struct BinaryMap {
  std::function<double(double, double, double)> fn;
  double bound = 0.0;
  double lipschitz_first = 0.0;
  double lipschitz_second = 0.0;
};

/// Convolution-driven dynamics.
/**
 * (psi * k)(x) = int psi(x') k(x', x) dx'. F(psi, t, x) = F0(psi * k3(x), t)
 * and D(psi, t, x, y) = D0(psi * k1(x), psi * k2(y), t). The kernels are
 * block matrices at any resolution and are cell-averaged to the field's
 * resolution. With s_i = max_x ||k_i(., x)||_2,
 * L = max(F0.bound, D0.bound, F0.lip s3, D0.lip1 s1 + D0.lip2 s2).
 */
class ConvolutionSpec final : public DynamicsSpec {
 public:
  ConvolutionSpec(Eigen::MatrixXd k1, Eigen::MatrixXd k2, Eigen::MatrixXd k3, BinaryMap d0, ScalarMap f0);

  [[nodiscard]] double regularity() const override { return regularity_; }
  void evaluate(std::span<const double> u, double t, std::span<double> drift,
                Eigen::MatrixXd& interaction) const override;

  /// (psi * k_which)(x_i) at the resolution of psi; which in {1, 2, 3}.
  [[nodiscard]] Eigen::VectorXd convolve(int which, std::span<const double> psi) const;

 private:
  struct Resampled {
    Eigen::MatrixXd k1;
    Eigen::MatrixXd k2;
    Eigen::MatrixXd k3;
  };
  const Resampled& at(int m) const;

  Eigen::MatrixXd k1_;
  Eigen::MatrixXd k2_;
  Eigen::MatrixXd k3_;
  BinaryMap d0_;
  ScalarMap f0_;
  double regularity_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::unique_ptr<Resampled>> cache_;
};

/// Field values recorded on an output time grid.
struct FieldPath {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;
  double initial_norm = 0.0;  ///< K = ||z||_2
  double regularity = 0.0;    ///< L of the spec that produced the path

  [[nodiscard]] int resolution() const { return static_cast<int>(values.front().size()); }
};

using ParticleField = FieldPath;
using ContinuumField = FieldPath;

struct SolutionClassReport {
  double max_norm = 0.0;
  double norm_bound = 0.0;          ///< K + 2L
  double max_lipschitz_excess = 0.0;  ///< max over recorded pairs of ||v_t - v_s||_2 - 2L |t - s|
  bool passed = false;
};

/// Checks ||v_t||_2 <= K + 2L and ||v_t - v_s||_2 <= 2L |t - s| + slack over all recorded pairs.
SolutionClassReport check_solution_class(const FieldPath& path, double slack = 1e-6);

struct ParticleOptions {
  double h_max = 1e-3;
};

/// RK4 between consecutive global jump times, with the graph held exactly constant.
ParticleField integrate_particles(const EdgeTrajectorySet& trajectories, const DynamicsSpec& spec,
                                  const Eigen::VectorXd& z, const std::vector<double>& output_grid,
                                  const ParticleOptions& options = {});

struct ContinuumOptions {
  double h_max = 1e-3;      ///< trapezoid node spacing
  double tol = 1e-10;       ///< Picard stopping gap
  int max_iterations = 60;
};

/// Picard iteration of the integral equation on windows of length min(1/(4L), 1).
/**
 * W is cell-averaged to `space_resolution`; z must have that many entries.
 * Throws SpecViolation when a window does not converge.
 */
ContinuumField continuum_solve(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& z,
                               int space_resolution, const std::vector<double>& output_grid,
                               const ContinuumOptions& options = {});

struct PicardProbe {
  std::vector<double> gaps;  ///< gaps[k] = sup_t ||v^{(k+1)}_t - v^{(k)}_t||_2
  bool contraction_holds = false;  ///< gaps[k+1] <= gaps[k] / 2 + 1e-9 for all k
};

/// Picard gaps on the window [0, window] starting from z.
PicardProbe picard_contraction_probe(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& z,
                                     double window, const ContinuumOptions& options = {});

/// Picard gaps on [start, start + window] from the state v at time start.
PicardProbe picard_contraction_probe(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& v,
                                     double start, double window, const ContinuumOptions& options = {});

/// Normalized Haar functions weighted 2^{-k}.
class WeakNormBasis {
 public:
  explicit WeakNormBasis(int terms = 16);

  [[nodiscard]] int terms() const { return terms_; }
  /// Exact value of basis function k (0-based) on [0,1).
  [[nodiscard]] double value(int k, double x) const;
  /// (k, i) entry = integral of basis function k over block i at resolution m.
  [[nodiscard]] Eigen::MatrixXd block_integrals(int m) const;
  /// Exact Gram matrix of the basis.
  [[nodiscard]] Eigen::MatrixXd gram() const;

 private:
  int terms_;
};

/// sum_k 2^{-(k+1)} |<u - v, phi_k>|; one resolution must divide the other.
double weak_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const WeakNormBasis& basis);

/// max over shared output times of weak_distance; the time grids must match.
double sup_weak_distance(const FieldPath& a, const FieldPath& b, const WeakNormBasis& basis);

/// `t,index,value` rows.
void write_field_csv(std::ostream& out, const FieldPath& path);

}  // namespace tgraphon

#endif
