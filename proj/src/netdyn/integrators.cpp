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
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "tgraphon/error.hpp"
#include "tgraphon/io.hpp"
#include "tgraphon/netdyn.hpp"

namespace tgraphon {

namespace {

void check_output_grid(const std::vector<double>& grid) {
  if (grid.empty()) {
    throw std::invalid_argument("output grid must not be empty");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0 && grid[k] <= 1.0) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw std::invalid_argument("output grid must be strictly increasing within [0, 1]");
    }
  }
}

Eigen::VectorXd rhs(const DynamicsSpec& spec, const Eigen::VectorXd& u, double t, const Eigen::MatrixXd& weights) {
  Eigen::VectorXd out(u.size());
  spec.rate_of_change({u.data(), static_cast<std::size_t>(u.size())}, t, weights,
                      {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

/// Classical RK4 from t0 to t1 with the weights frozen.
void rk4(const DynamicsSpec& spec, const Eigen::MatrixXd& weights, double t0, double t1, double h_max,
         Eigen::VectorXd& u) {
  if (!(t1 > t0)) {
    return;
  }
  const auto steps = static_cast<long>(std::max(1.0, std::ceil((t1 - t0) / h_max - 1e-12)));
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + static_cast<double>(s) * h;
    const Eigen::VectorXd k1 = rhs(spec, u, t, weights);
    const Eigen::VectorXd k2 = rhs(spec, u + 0.5 * h * k1, t + 0.5 * h, weights);
    const Eigen::VectorXd k3 = rhs(spec, u + 0.5 * h * k2, t + 0.5 * h, weights);
    const Eigen::VectorXd k4 = rhs(spec, u + h * k3, t + h, weights);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

/// Nodes of [t0, t1] containing `marks`, with spacing at most h_max.
std::vector<double> refine_nodes(std::vector<double> marks, double h_max) {
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  std::vector<double> nodes{marks.front()};
  for (std::size_t k = 1; k < marks.size(); ++k) {
    const double a = marks[k - 1];
    const double b = marks[k];
    const auto pieces = static_cast<long>(std::max(1.0, std::ceil((b - a) / h_max - 1e-9)));
    for (long p = 1; p < pieces; ++p) {
      nodes.push_back(a + (b - a) * static_cast<double>(p) / static_cast<double>(pieces));
    }
    nodes.push_back(b);
  }
  return nodes;
}

struct WeightPath {
  TimeGrid grid;
  std::vector<Eigen::MatrixXd> slabs;

  WeightPath(const TemporalStepGraphon& w, int m) : grid(w.grid()) {
    for (std::size_t s = 0; s < w.slab_count(); ++s) {
      slabs.push_back(resample_blocks(w.slab(s).values(), m));
    }
  }
  /// Slab governing the open subinterval (a, b) of one grid cell.
  [[nodiscard]] std::size_t slab_between(double a, double b) const { return grid.slab_at(0.5 * (a + b)); }
};

/// Picard iteration of the trapezoid integral map on `nodes` from v0.
/**
 * The weights are constant on every subinterval because all weight
 * breakpoints are nodes. Returns the converged iterate at every node.
 */
std::vector<Eigen::VectorXd> picard_window(const std::vector<double>& nodes, const Eigen::VectorXd& v0,
                                           const WeightPath& weights, const DynamicsSpec& spec,
                                           const ContinuumOptions& options, std::vector<double>* gaps,
                                           bool require_convergence) {
  const std::size_t count = nodes.size();
  std::vector<Eigen::VectorXd> current(count, v0);
  std::vector<std::size_t> slab(count - 1);
  for (std::size_t l = 0; l + 1 < count; ++l) {
    slab[l] = weights.slab_between(nodes[l], nodes[l + 1]);
  }
  for (int it = 0; it < options.max_iterations; ++it) {
    std::vector<Eigen::VectorXd> next(count);
    next[0] = v0;
    Eigen::VectorXd acc = v0;
    Eigen::VectorXd left;
    std::size_t left_slab = slab.empty() ? 0 : slab[0];
    bool have_left = false;
    for (std::size_t l = 0; l + 1 < count; ++l) {
      const Eigen::MatrixXd& w = weights.slabs[slab[l]];
      if (!have_left || left_slab != slab[l]) {
        left = rhs(spec, current[l], nodes[l], w);
      }
      Eigen::VectorXd right = rhs(spec, current[l + 1], nodes[l + 1], w);
      acc += 0.5 * (nodes[l + 1] - nodes[l]) * (left + right);
      next[l + 1] = acc;
      left = std::move(right);
      left_slab = slab[l];
      have_left = true;
    }
    double gap = 0.0;
    for (std::size_t l = 0; l < count; ++l) {
      gap = std::max(gap, field_norm(next[l] - current[l]));
    }
    current = std::move(next);
    if (gaps != nullptr) {
      gaps->push_back(gap);
    }
    if (gap <= options.tol) {
      return current;
    }
  }
  if (require_convergence) {
    throw SpecViolation("Picard iteration did not converge within " + std::to_string(options.max_iterations) +
                        " iterations; the contraction assumption fails");
  }
  return current;
}

}  // namespace

ParticleField integrate_particles(const EdgeTrajectorySet& trajectories, const DynamicsSpec& spec,
                                  const Eigen::VectorXd& z, const std::vector<double>& output_grid,
                                  const ParticleOptions& options) {
  const int n = trajectories.size();
  if (z.size() != n) {
    throw DimensionMismatch("initial field must have one entry per particle");
  }
  if (!(options.h_max > 0.0)) {
    throw std::invalid_argument("h_max must be positive");
  }
  check_output_grid(output_grid);

  Eigen::MatrixXd adjacency(n, n);
  std::vector<std::pair<double, int>> events;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adjacency(i, j) = trajectories.initial_state(i, j);
      for (const double t : trajectories.jumps(i, j)) {
        events.emplace_back(t, i * n + j);
      }
    }
  }
  std::sort(events.begin(), events.end());

  ParticleField path;
  path.initial_norm = field_norm(z);
  path.regularity = spec.regularity();
  Eigen::VectorXd u = z;
  double t = 0.0;
  std::size_t next_event = 0;
  for (const double target : output_grid) {
    while (t < target) {
      const double stop = next_event < events.size() ? std::min(events[next_event].first, target) : target;
      rk4(spec, adjacency, t, stop, options.h_max, u);
      t = stop;
      while (next_event < events.size() && events[next_event].first <= t) {
        const int e = events[next_event].second;
        auto& entry = adjacency(e / n, e % n);
        entry = 1.0 - entry;
        ++next_event;
      }
    }
    path.times.push_back(target);
    path.values.push_back(u);
  }
  return path;
}

ContinuumField continuum_solve(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& z,
                               int space_resolution, const std::vector<double>& output_grid,
                               const ContinuumOptions& options) {
  if (space_resolution <= 0 || z.size() != space_resolution) {
    throw DimensionMismatch("initial field must have space_resolution entries");
  }
  if (!(options.h_max > 0.0) || !(options.tol > 0.0) || options.max_iterations <= 0) {
    throw std::invalid_argument("continuum options must be positive");
  }
  check_output_grid(output_grid);
  const WeightPath weights(w, space_resolution);
  const double epsilon = std::min(1.0 / (4.0 * spec.regularity()), 1.0);
  const double horizon = output_grid.back();

  std::vector<double> window_ends{0.0};
  for (double e = epsilon; e < horizon; e += epsilon) {
    window_ends.push_back(e);
  }
  window_ends.push_back(horizon);

  ContinuumField path;
  path.initial_norm = field_norm(z);
  path.regularity = spec.regularity();
  std::size_t next_output = 0;
  auto record = [&](double t, const Eigen::VectorXd& v) {
    while (next_output < output_grid.size() && output_grid[next_output] == t) {
      path.times.push_back(t);
      path.values.push_back(v);
      ++next_output;
    }
  };
  record(0.0, z);

  Eigen::VectorXd v = z;
  for (std::size_t k = 0; k + 1 < window_ends.size(); ++k) {
    const double a = window_ends[k];
    const double b = window_ends[k + 1];
    if (!(b > a)) {
      continue;
    }
    std::vector<double> marks{a, b};
    for (const double t : output_grid) {
      if (t > a && t < b) {
        marks.push_back(t);
      }
    }
    for (const double t : w.grid().breakpoints()) {
      if (t > a && t < b) {
        marks.push_back(t);
      }
    }
    const auto nodes = refine_nodes(std::move(marks), options.h_max);
    const auto values = picard_window(nodes, v, weights, spec, options, nullptr, true);
    for (std::size_t l = 1; l < nodes.size(); ++l) {
      record(nodes[l], values[l]);
    }
    v = values.back();
  }
  return path;
}

PicardProbe picard_contraction_probe(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& z,
                                     double window, const ContinuumOptions& options) {
  return picard_contraction_probe(w, spec, z, 0.0, window, options);
}

PicardProbe picard_contraction_probe(const TemporalStepGraphon& w, const DynamicsSpec& spec, const Eigen::VectorXd& v,
                                     double start, double window, const ContinuumOptions& options) {
  const double epsilon = std::min(1.0 / (4.0 * spec.regularity()), 1.0);
  if (!(window > 0.0 && window <= epsilon * (1.0 + 1e-12))) {
    throw std::invalid_argument("probe window must lie in (0, min(1/(4L), 1)]");
  }
  const double end = start + window;
  if (!(start >= 0.0) || end > 1.0 + 1e-12) {
    throw std::invalid_argument("probe window must lie inside [0, 1]");
  }
  const WeightPath weights(w, static_cast<int>(v.size()));
  std::vector<double> marks{start, std::min(end, 1.0)};
  for (const double t : w.grid().breakpoints()) {
    if (t > start && t < end) {
      marks.push_back(t);
    }
  }
  const auto nodes = refine_nodes(std::move(marks), options.h_max);
  PicardProbe probe;
  picard_window(nodes, v, weights, spec, options, &probe.gaps, false);
  probe.contraction_holds = true;
  for (std::size_t k = 0; k + 1 < probe.gaps.size(); ++k) {
    if (probe.gaps[k + 1] > probe.gaps[k] / 2.0 + 1e-9) {
      probe.contraction_holds = false;
    }
  }
  return probe;
}

SolutionClassReport check_solution_class(const FieldPath& path, double slack) {
  SolutionClassReport report;
  const double two_l = 2.0 * path.regularity;
  report.norm_bound = path.initial_norm + two_l;
  report.max_lipschitz_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < path.values.size(); ++a) {
    report.max_norm = std::max(report.max_norm, field_norm(path.values[a]));
    for (std::size_t b = a + 1; b < path.values.size(); ++b) {
      const double excess = field_norm(path.values[b] - path.values[a]) - two_l * (path.times[b] - path.times[a]);
      report.max_lipschitz_excess = std::max(report.max_lipschitz_excess, excess);
    }
  }
  if (path.values.size() < 2) {
    report.max_lipschitz_excess = 0.0;
  }
  report.passed = report.max_norm <= report.norm_bound + slack && report.max_lipschitz_excess <= slack;
  return report;
}

double sup_weak_distance(const FieldPath& a, const FieldPath& b, const WeakNormBasis& basis) {
  if (a.times != b.times) {
    throw DimensionMismatch("field paths are recorded on different time grids");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    worst = std::max(worst, weak_distance(a.values[k], b.values[k], basis));
  }
  return worst;
}

void write_field_csv(std::ostream& out, const FieldPath& path) {
  out << "t,index,value\n";
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    for (Eigen::Index i = 0; i < path.values[k].size(); ++i) {
      out << format_double(path.times[k]) << ',' << i << ',' << format_double(path.values[k](i)) << '\n';
    }
  }
}

}  // namespace tgraphon
