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
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tgraphon/error.hpp"
#include "tgraphon/netdyn.hpp"

namespace tgraphon {

namespace {

constexpr double kBoundSlack = 1e-9;

double midpoint(int i, int m) { return (i + 0.5) / m; }

[[noreturn]] void bound_violation(const char* what, double value, double bound) {
  throw SpecViolation(std::string(what) + " magnitude " + std::to_string(value) + " exceeds the regularity bound " +
                      std::to_string(bound));
}

}  // namespace

double field_norm(const Eigen::VectorXd& u) { return u.size() == 0 ? 0.0 : std::sqrt(u.squaredNorm() / u.size()); }

void DynamicsSpec::rate_of_change(std::span<const double> u, double t, const Eigen::MatrixXd& weights,
                                  std::span<double> out) const {
  const auto m = static_cast<Eigen::Index>(u.size());
  Eigen::MatrixXd interaction(m, m);
  evaluate(u, t, out, interaction);
  const double limit = regularity() + kBoundSlack;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(out[i]) > limit) {
      bound_violation("drift", out[i], regularity());
    }
  }
  const double worst = interaction.cwiseAbs().maxCoeff();
  if (worst > limit) {
    bound_violation("interaction", worst, regularity());
  }
  const Eigen::VectorXd coupled = weights.cwiseProduct(interaction).rowwise().sum() / static_cast<double>(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out[i] += coupled(i);
  }
}

FunctionalSpec::FunctionalSpec(Drift drift, Interaction interaction, double regularity)
    : drift_(std::move(drift)), interaction_(std::move(interaction)), regularity_(regularity) {
  if (!drift_ || !interaction_) {
    throw std::invalid_argument("functional spec needs both callables");
  }
  if (!(regularity_ > 0.0) || !std::isfinite(regularity_)) {
    throw std::invalid_argument("regularity constant must be positive and finite");
  }
}

void FunctionalSpec::evaluate(std::span<const double> u, double t, std::span<double> drift,
                              Eigen::MatrixXd& interaction) const {
  const int m = static_cast<int>(u.size());
  for (int i = 0; i < m; ++i) {
    drift[i] = drift_(u, t, midpoint(i, m));
    for (int j = 0; j < m; ++j) {
      interaction(i, j) = interaction_(u, t, midpoint(i, m), midpoint(j, m));
    }
  }
}

KuramotoSpec::KuramotoSpec(double coupling, std::function<double(double)> omega, double omega_bound)
    : coupling_(coupling),
      omega_(std::move(omega)),
      omega_bound_(omega_bound),
      regularity_(std::max(2.0 * coupling, omega_bound)) {
  if (!(coupling > 0.0) || !(omega_bound >= 0.0) || !omega_) {
    throw std::invalid_argument("Kuramoto spec needs positive coupling and a bounded frequency map");
  }
}

void KuramotoSpec::evaluate(std::span<const double> u, double /*t*/, std::span<double> drift,
                            Eigen::MatrixXd& interaction) const {
  const int m = static_cast<int>(u.size());
  for (int i = 0; i < m; ++i) {
    drift[i] = omega_(midpoint(i, m));
    for (int j = 0; j < m; ++j) {
      interaction(i, j) = std::clamp(coupling_ * std::sin(u[j] - u[i]), -regularity_, regularity_);
    }
  }
}

void KuramotoSpec::rate_of_change(std::span<const double> u, double /*t*/, const Eigen::MatrixXd& weights,
                                  std::span<double> out) const {
  // |coupling sin| <= coupling < L, so the clip never binds here.
  const auto m = static_cast<Eigen::Index>(u.size());
  const Eigen::Map<const Eigen::VectorXd> state(u.data(), m);
  const Eigen::VectorXd s = state.array().sin();
  const Eigen::VectorXd c = state.array().cos();
  const Eigen::VectorXd ws = weights * s;
  const Eigen::VectorXd wc = weights * c;
  const double limit = regularity_ + kBoundSlack;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double drift = omega_(midpoint(static_cast<int>(i), static_cast<int>(m)));
    if (std::abs(drift) > limit) {
      bound_violation("drift", drift, regularity_);
    }
    out[i] = drift + coupling_ * (c(i) * ws(i) - s(i) * wc(i)) / static_cast<double>(m);
  }
}

namespace {

/// max over columns x of sqrt(mean over x' of k(x', x)^2).
double column_l2_sup(const Eigen::MatrixXd& k) {
  return std::sqrt((k.array().square().colwise().sum() / static_cast<double>(k.rows())).maxCoeff());
}

}  // namespace

ConvolutionSpec::ConvolutionSpec(Eigen::MatrixXd k1, Eigen::MatrixXd k2, Eigen::MatrixXd k3, BinaryMap d0,
                                 ScalarMap f0)
    : k1_(std::move(k1)), k2_(std::move(k2)), k3_(std::move(k3)), d0_(std::move(d0)), f0_(std::move(f0)) {
  for (const auto* k : {&k1_, &k2_, &k3_}) {
    if (k->rows() == 0 || k->rows() != k->cols() || !k->allFinite()) {
      throw std::invalid_argument("convolution kernels must be finite square block matrices");
    }
  }
  if (!d0_.fn || !f0_.fn) {
    throw std::invalid_argument("convolution spec needs both maps");
  }
  const std::array<double, 5> constants{d0_.bound, f0_.bound, d0_.lipschitz_first, d0_.lipschitz_second,
                                        f0_.lipschitz};
  for (const double c : constants) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("declared bounds and Lipschitz constants must be finite and nonnegative");
    }
  }
  regularity_ = std::max({f0_.bound, d0_.bound, f0_.lipschitz * column_l2_sup(k3_),
                          d0_.lipschitz_first * column_l2_sup(k1_) + d0_.lipschitz_second * column_l2_sup(k2_)});
  if (!(regularity_ > 0.0)) {
    throw std::invalid_argument("convolution spec is identically zero");
  }
}

const ConvolutionSpec::Resampled& ConvolutionSpec::at(int m) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = cache_[m];
  if (!slot) {
    slot = std::make_unique<Resampled>(Resampled{resample_blocks(k1_, m), resample_blocks(k2_, m),
                                                 resample_blocks(k3_, m)});
  }
  return *slot;
}

Eigen::VectorXd ConvolutionSpec::convolve(int which, std::span<const double> psi) const {
  if (which < 1 || which > 3) {
    throw std::invalid_argument("kernel index must be 1, 2 or 3");
  }
  const int m = static_cast<int>(psi.size());
  const Resampled& k = at(m);
  const Eigen::MatrixXd& kernel = which == 1 ? k.k1 : which == 2 ? k.k2 : k.k3;
  const Eigen::Map<const Eigen::VectorXd> field(psi.data(), m);
  return kernel.transpose() * field / static_cast<double>(m);
}

void ConvolutionSpec::evaluate(std::span<const double> u, double t, std::span<double> drift,
                               Eigen::MatrixXd& interaction) const {
  const int m = static_cast<int>(u.size());
  const Eigen::VectorXd c1 = convolve(1, u);
  const Eigen::VectorXd c2 = convolve(2, u);
  const Eigen::VectorXd c3 = convolve(3, u);
  for (int i = 0; i < m; ++i) {
    drift[i] = f0_.fn(c3(i), t);
    for (int j = 0; j < m; ++j) {
      interaction(i, j) = d0_.fn(c1(i), c2(j), t);
    }
  }
}

}  // namespace tgraphon
