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

#include "tgraphon/error.hpp"
#include "tgraphon/netdyn.hpp"

namespace tgraphon {

namespace {

/// Level j and position p of Haar function k >= 1 (k = 2^j + p).
std::pair<int, int> haar_index(int k) {
  int j = 0;
  while ((2 << j) <= k) {
    ++j;
  }
  return {j, k - (1 << j)};
}

double overlap(double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); }

}  // namespace

WeakNormBasis::WeakNormBasis(int terms) : terms_(terms) {
  if (terms_ < 1 || terms_ > 1 << 20) {
    throw std::invalid_argument("weak-norm basis needs between 1 and 2^20 terms");
  }
}

double WeakNormBasis::value(int k, double x) const {
  if (k == 0) {
    return 1.0;
  }
  const auto [j, p] = haar_index(k);
  const double scale = std::ldexp(1.0, j);
  const double y = x * scale - p;
  if (y < 0.0 || y >= 1.0) {
    return 0.0;
  }
  const double height = std::sqrt(scale);
  return y < 0.5 ? height : -height;
}

Eigen::MatrixXd WeakNormBasis::block_integrals(int m) const {
  Eigen::MatrixXd out(terms_, m);
  for (int i = 0; i < m; ++i) {
    const double lo = static_cast<double>(i) / m;
    const double hi = static_cast<double>(i + 1) / m;
    out(0, i) = hi - lo;
    for (int k = 1; k < terms_; ++k) {
      const auto [j, p] = haar_index(k);
      const double width = std::ldexp(1.0, -j);
      const double start = p * width;
      const double mid = start + 0.5 * width;
      const double height = std::sqrt(std::ldexp(1.0, j));
      out(k, i) = height * (overlap(lo, hi, start, mid) - overlap(lo, hi, mid, start + width));
    }
  }
  return out;
}

Eigen::MatrixXd WeakNormBasis::gram() const {
  // Every basis function is constant on the dyadic cells of the finest level.
  const int finest = terms_ == 1 ? 1 : 2 << haar_index(terms_ - 1).first;
  Eigen::MatrixXd values(terms_, finest);
  for (int k = 0; k < terms_; ++k) {
    for (int c = 0; c < finest; ++c) {
      values(k, c) = value(k, (c + 0.5) / finest);
    }
  }
  return values * values.transpose() / static_cast<double>(finest);
}

namespace {

Eigen::VectorXd refine(const Eigen::VectorXd& u, int m) {
  const auto factor = m / u.size();
  Eigen::VectorXd out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i) = u(i / factor);
  }
  return out;
}

}  // namespace

double weak_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const WeakNormBasis& basis) {
  const auto m = std::max(u.size(), v.size());
  const auto k = std::min(u.size(), v.size());
  if (k == 0 || m % k != 0) {
    throw DimensionMismatch("weak distance needs one resolution to divide the other");
  }
  const Eigen::VectorXd diff = refine(u, static_cast<int>(m)) - refine(v, static_cast<int>(m));
  const Eigen::VectorXd inner = basis.block_integrals(static_cast<int>(m)) * diff;
  double total = 0.0;
  for (int t = 0; t < basis.terms(); ++t) {
    total += std::ldexp(std::abs(inner(t)), -(t + 1));
  }
  return total;
}

}  // namespace tgraphon
