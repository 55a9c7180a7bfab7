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

#include "tgraphon/cut_norm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "tgraphon/error.hpp"

namespace tgraphon {
namespace {

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

void require_square(const Eigen::MatrixXd& d) {
  if (d.rows() == 0 || d.rows() != d.cols()) {
    throw std::invalid_argument("difference matrix must be a non-empty square matrix");
  }
}

void require_same_resolution(const StepGraphon& f, const StepGraphon& g) {
  if (f.resolution() != g.resolution()) {
    throw DimensionMismatch("graphons have resolutions " + std::to_string(f.resolution()) + " and " +
                            std::to_string(g.resolution()));
  }
}

double bilinear(const Eigen::MatrixXd& d, const std::vector<int>& a, const std::vector<int>& b) {
  const auto n = d.rows();
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double col = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      col += a[i] * d(i, j);
    }
    total += b[j] * col;
  }
  return total / static_cast<double>(n * n);
}

double block_sum(const Eigen::MatrixXd& d, const std::vector<bool>& rows, const std::vector<bool>& cols) {
  const auto n = d.rows();
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!cols[j]) {
      continue;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (rows[i]) {
        total += d(i, j);
      }
    }
  }
  return total;
}

// b_j = sign(sum_i a_i D_ij)
std::vector<int> best_response_cols(const Eigen::MatrixXd& d, const std::vector<int>& a) {
  const auto n = d.rows();
  std::vector<int> b(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      s += a[i] * d(i, j);
    }
    b[j] = sign_of(s);
  }
  return b;
}

std::vector<int> best_response_rows(const Eigen::MatrixXd& d, const std::vector<int>& b) {
  const auto n = d.rows();
  std::vector<int> a(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      s += b[j] * d(i, j);
    }
    a[i] = sign_of(s);
  }
  return a;
}

CutNormResult exact_inf_to_one(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  const Eigen::MatrixXd rows = d.transpose();  // column i holds row i of d
  // (a, b) and (-a, -b) score the same, so a_0 = +1 is fixed.
  Eigen::VectorXd c = d.colwise().sum().transpose();
  std::vector<int> a(n, 1);
  double best = c.cwiseAbs().sum();
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  const std::uint64_t states = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < states; ++k) {
    const int bit = std::countr_zero(k);
    const int i = bit + 1;
    a[i] = -a[i];
    code ^= std::uint64_t{1} << bit;
    const double* row = rows.col(i).data();
    const double step = 2.0 * a[i];
    double score = 0.0;
    for (int j = 0; j < n; ++j) {
      c[j] += step * row[j];
      score += std::abs(c[j]);
    }
    if (score > best) {
      best = score;
      best_code = code;
    }
  }
  CutNormResult out;
  out.witness_a.assign(n, 1);
  for (int i = 1; i < n; ++i) {
    if ((best_code >> (i - 1)) & 1U) {
      out.witness_a[i] = -1;
    }
  }
  out.witness_b = best_response_cols(d, out.witness_a);
  out.value = bilinear(d, out.witness_a, out.witness_b);
  out.certified = true;
  return out;
}

std::vector<int> random_signs(std::mt19937_64& rng, Eigen::Index n) {
  std::vector<int> s(n);
  std::uint64_t bits = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i % 64 == 0) {
      bits = rng();
    }
    s[i] = (bits >> (i % 64)) & 1U ? 1 : -1;
  }
  return s;
}

/// Single sign flips of s that increase sum_j |sum_i s_i m(i,j)|; true if any was taken.
bool one_flip_search(const Eigen::MatrixXd& m, std::vector<int>& s) {
  const auto n = m.rows();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    c += s[i] * m.row(i).transpose();
  }
  bool improved_any = false;
  for (bool improved = true; improved;) {
    improved = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd moved = c - 2.0 * s[i] * m.row(i).transpose();
      if (moved.cwiseAbs().sum() > c.cwiseAbs().sum() * (1.0 + 1e-13) + 1e-300) {
        c = moved;
        s[i] = -s[i];
        improved = improved_any = true;
      }
    }
  }
  return improved_any;
}

CutNormResult heuristic_inf_to_one(const Eigen::MatrixXd& d, const HeuristicOptions& options) {
  const auto n = d.rows();
  std::mt19937_64 rng(options.seed);
  CutNormResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    std::vector<int> a = r == 0 ? std::vector<int>(n, 1) : random_signs(rng, n);
    std::vector<int> b = best_response_cols(d, a);
    double value = bilinear(d, a, b);
    for (int iter = 0; iter < 200; ++iter) {
      auto a_next = best_response_rows(d, b);
      auto b_next = best_response_cols(d, a_next);
      const double next = bilinear(d, a_next, b_next);
      if (!(next > value)) {
        break;
      }
      a = std::move(a_next);
      b = std::move(b_next);
      value = next;
    }
    // Alternating best responses stall in shallow optima; single flips on
    // either side with the other side re-optimized escape most of them.
    const Eigen::MatrixXd dt = d.transpose();
    for (int round = 0; round < 100; ++round) {
      const bool moved_a = one_flip_search(d, a);
      b = best_response_cols(d, a);
      const bool moved_b = one_flip_search(dt, b);
      a = best_response_rows(d, b);
      b = best_response_cols(d, a);
      if (!moved_a && !moved_b) {
        break;
      }
    }
    value = bilinear(d, a, b);
    if (value > best.value) {
      best.value = value;
      best.witness_a = std::move(a);
      best.witness_b = std::move(b);
    }
  }
  best.certified = false;
  return best;
}

CutDistanceResult exact_cut(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  const Eigen::MatrixXd rows = d.transpose();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  std::vector<bool> in(n, false);
  double best = 0.0;
  bool best_positive = true;
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < states; ++k) {
    const int i = std::countr_zero(k);
    in[i] = !in[i];
    code ^= std::uint64_t{1} << i;
    const double* row = rows.col(i).data();
    const double step = in[i] ? 1.0 : -1.0;
    double pos = 0.0;
    double neg = 0.0;
    for (int j = 0; j < n; ++j) {
      c[j] += step * row[j];
      if (c[j] > 0.0) {
        pos += c[j];
      } else {
        neg -= c[j];
      }
    }
    if (pos > best) {
      best = pos;
      best_positive = true;
      best_code = code;
    }
    if (neg > best) {
      best = neg;
      best_positive = false;
      best_code = code;
    }
  }
  CutDistanceResult out;
  out.rows.assign(n, false);
  out.cols.assign(n, false);
  for (int i = 0; i < n; ++i) {
    out.rows[i] = ((best_code >> i) & 1U) != 0;
  }
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      if (out.rows[i]) {
        s += d(i, j);
      }
    }
    out.cols[j] = best_positive ? s > 0.0 : s < 0.0;
  }
  out.value = std::abs(block_sum(d, out.rows, out.cols)) / static_cast<double>(n) / static_cast<double>(n);
  out.certified = true;
  return out;
}

CutDistanceResult heuristic_cut(const Eigen::MatrixXd& d, const HeuristicOptions& options) {
  const auto n = d.rows();
  std::mt19937_64 rng(options.seed);
  CutDistanceResult best;
  best.rows.assign(n, false);
  best.cols.assign(n, false);
  double best_raw = 0.0;
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) {
    const auto start = random_signs(rng, n);
    for (const double orient : {1.0, -1.0}) {
      std::vector<bool> rows(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        rows[i] = r == 0 ? true : start[i] > 0;
      }
      std::vector<bool> cols(n, false);
      double value = -std::numeric_limits<double>::infinity();
      for (int iter = 0; iter < 200; ++iter) {
        for (Eigen::Index j = 0; j < n; ++j) {
          double s = 0.0;
          for (Eigen::Index i = 0; i < n; ++i) {
            if (rows[i]) {
              s += d(i, j);
            }
          }
          cols[j] = orient * s > 0.0;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          double s = 0.0;
          for (Eigen::Index j = 0; j < n; ++j) {
            if (cols[j]) {
              s += d(i, j);
            }
          }
          rows[i] = orient * s > 0.0;
        }
        const double next = orient * block_sum(d, rows, cols);
        if (!(next > value)) {
          break;
        }
        value = next;
      }
      if (value > best_raw) {
        best_raw = value;
        best.rows = rows;
        best.cols = cols;
      }
    }
  }
  best.value = std::abs(block_sum(d, best.rows, best.cols)) / static_cast<double>(n) / static_cast<double>(n);
  best.certified = false;
  return best;
}

}  // namespace

CutNormResult inf_to_one_norm(const Eigen::MatrixXd& diff, CutMode mode, const HeuristicOptions& options) {
  require_square(diff);
  if (mode == CutMode::exact) {
    if (diff.rows() > kExactCutResolution) {
      throw std::invalid_argument("exact d_inf->1 enumeration is limited to n <= " +
                                  std::to_string(kExactCutResolution));
    }
    return exact_inf_to_one(diff);
  }
  return heuristic_inf_to_one(diff, options);
}

CutNormResult inf_to_one_distance(const StepGraphon& f, const StepGraphon& g, CutMode mode,
                                  const HeuristicOptions& options) {
  require_same_resolution(f, g);
  return inf_to_one_norm(f.values() - g.values(), mode, options);
}

CutDistanceResult cut_norm(const Eigen::MatrixXd& diff, const HeuristicOptions& options) {
  require_square(diff);
  if (diff.rows() <= kExactCutResolution) {
    return exact_cut(diff);
  }
  return heuristic_cut(diff, options);
}

CutDistanceResult cut_distance(const StepGraphon& f, const StepGraphon& g, const HeuristicOptions& options) {
  require_same_resolution(f, g);
  return cut_norm(f.values() - g.values(), options);
}

StepGraphon relabel(const StepGraphon& g, const std::vector<int>& sigma) {
  const int n = g.resolution();
  if (static_cast<int>(sigma.size()) != n) {
    throw DimensionMismatch("permutation size differs from the resolution");
  }
  std::vector<bool> seen(n, false);
  for (const int s : sigma) {
    if (s < 0 || s >= n || seen[s]) {
      throw std::invalid_argument("not a permutation of [n]");
    }
    seen[s] = true;
  }
  Eigen::MatrixXd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out(i, j) = g(sigma[i], sigma[j]);
    }
  }
  return StepGraphon(std::move(out));
}

RelabelResult relabeled_cut_distance(const StepGraphon& f, const StepGraphon& g, int budget,
                                     const HeuristicOptions& options) {
  require_same_resolution(f, g);
  const int n = f.resolution();
  auto evaluate = [&](const std::vector<int>& sigma) { return cut_distance(f, relabel(g, sigma), options).value; };

  RelabelResult out;
  out.certified = n <= kExactCutResolution;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);

  if (n <= kExactPermutationResolution) {
    out.exhaustive = true;
    out.value = std::numeric_limits<double>::infinity();
    do {
      const double v = evaluate(sigma);
      if (v < out.value) {
        out.value = v;
        out.permutation = sigma;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()) && out.value > 0.0);
    return out;
  }

  out.permutation = sigma;
  out.value = evaluate(sigma);
  int spent = 1;

  // Greedy matching of vertices by out/in degree.
  const Eigen::VectorXd f_out = f.values().rowwise().sum();
  const Eigen::VectorXd f_in = f.values().colwise().sum().transpose();
  const Eigen::VectorXd g_out = g.values().rowwise().sum();
  const Eigen::VectorXd g_in = g.values().colwise().sum().transpose();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return f_out[x] + f_in[x] > f_out[y] + f_in[y]; });
  std::vector<bool> used(n, false);
  std::vector<int> greedy(n, -1);
  for (const int i : order) {
    int pick = -1;
    double pick_cost = std::numeric_limits<double>::infinity();
    for (int u = 0; u < n; ++u) {
      if (used[u]) {
        continue;
      }
      const double cost = std::abs(f_out[i] - g_out[u]) + std::abs(f_in[i] - g_in[u]);
      if (cost < pick_cost) {
        pick_cost = cost;
        pick = u;
      }
    }
    used[pick] = true;
    greedy[i] = pick;
  }
  double current = out.value;
  if (spent < budget) {
    const double v = evaluate(greedy);
    ++spent;
    if (v < current) {
      current = v;
      sigma = greedy;
    }
  }

  bool improved = true;
  while (improved && spent < budget && current > 0.0) {
    improved = false;
    for (int i = 0; i < n && spent < budget; ++i) {
      for (int j = i + 1; j < n && spent < budget; ++j) {
        std::swap(sigma[i], sigma[j]);
        const double v = evaluate(sigma);
        ++spent;
        if (v < current) {
          current = v;
          improved = true;
        } else {
          std::swap(sigma[i], sigma[j]);
        }
      }
    }
  }
  if (current < out.value) {
    out.value = current;
    out.permutation = sigma;
  }
  return out;
}

}  // namespace tgraphon
