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
#include <memory>
#include <sstream>

#include "tgraphon/cut_norm.hpp"
#include "tgraphon/error.hpp"
#include "tgraphon/estimators.hpp"
#include "tgraphon/harness.hpp"
#include "tgraphon/io.hpp"
#include "tgraphon/netdyn.hpp"
#include "tgraphon/rate_function.hpp"
#include "tgraphon/rng.hpp"

namespace tgraphon {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr ParallelOptions kSerial{1};

/// JSON cannot hold non-finite numbers; they are written as null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

std::string fmt(double v) { return format_double(v); }

ExperimentReport start_report(const ExperimentConfig& config) {
  ExperimentReport report;
  report.kind = config.kind;
  report.config_hash = config.hash();
  report.seed = config.seed;
  return report;
}

void finish_row(ordered_json& row, const ExperimentReport& report, std::uint64_t seed) {
  row["seed"] = seed;
  row["config_hash"] = report.config_hash;
}

SpeedSchedule speed_of(const json& s) {
  return SpeedSchedule{s.at("speed").at("coefficient").get<double>(), s.at("speed").at("exponent").get<double>()};
}

std::vector<int> positive_ints(const json& s, const char* key) {
  auto values = s.at(key).get<std::vector<int>>();
  if (std::any_of(values.begin(), values.end(), [](int v) { return v <= 0; })) {
    throw ConfigError(std::string("\"") + key + "\" entries must be positive");
  }
  return values;
}

std::size_t positive_count(const json& s, const char* key) {
  const auto v = s.at(key).get<long long>();
  if (v <= 0) {
    throw ConfigError(std::string("\"") + key + "\" must be positive");
  }
  return static_cast<std::size_t>(v);
}

/// Edge probabilities at t = 0: "empty" or "stationary" (w on the first slab).
StepGraphon initial_probabilities(const KernelPair& pair_n, const std::string& mode) {
  if (mode == "empty") {
    return empty_initial(pair_n.resolution());
  }
  if (mode == "stationary") {
    return mean_field(pair_n).w.slab(0);
  }
  throw ConfigError("initial must be \"empty\" or \"stationary\"");
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (!(v[k] < v[k - 1])) {
      return false;
    }
  }
  return true;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1]) {
      return false;
    }
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (const double x : v) {
    out += (out.empty() ? "" : ", ") + fmt(x);
  }
  return "[" + out + "]";
}

// Dynamics specs and fields ------------------------------------------------

std::unique_ptr<DynamicsSpec> dynamics_spec(const json& spec) {
  const auto kind = spec.value("kind", std::string("kuramoto"));
  if (kind == "kuramoto") {
    const double amplitude = spec.value("omega_amplitude", 0.0);
    return std::make_unique<KuramotoSpec>(
        spec.value("coupling", 1.0), [amplitude](double x) { return amplitude * std::sin(2.0 * M_PI * x); },
        std::abs(amplitude));
  }
  if (kind == "constant") {
    const double c = spec.value("drift", 0.0);
    const double d = spec.value("interaction", 0.0);
    return std::make_unique<FunctionalSpec>([c](std::span<const double>, double, double) { return c; },
                                            [d](std::span<const double>, double, double, double) { return d; },
                                            std::max({std::abs(c), std::abs(d), 1e-6}));
  }
  if (kind == "convolution") {
    const double ds = spec.value("interaction_scale", 1.0);
    const double fs = spec.value("drift_scale", 1.0);
    BinaryMap d0{[ds](double x, double y, double) { return ds * std::tanh(x - 0.5 * y); }, std::abs(ds),
                 std::abs(ds), 0.5 * std::abs(ds)};
    ScalarMap f0{[fs](double x, double) { return fs * std::sin(x); }, std::abs(fs), std::abs(fs)};
    auto matrix = [&](const char* key) {
      const auto& rows = spec.at(key);
      const auto k = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXd m(k, k);
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
          m(i, j) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
        }
      }
      return m;
    };
    return std::make_unique<ConvolutionSpec>(matrix("k1"), matrix("k2"), matrix("k3"), d0, f0);
  }
  throw ConfigError("unknown dynamics spec kind \"" + kind + "\"");
}

/// Initial field sampled at the midpoints of m blocks.
Eigen::VectorXd initial_field(const json& spec, int m) {
  const auto kind = spec.value("kind", std::string("sine"));
  Eigen::VectorXd z(m);
  for (int i = 0; i < m; ++i) {
    const double x = (i + 0.5) / m;
    if (kind == "sine") {
      z(i) = spec.value("amplitude", 1.0) * std::sin(2.0 * M_PI * spec.value("frequency", 1.0) * x);
    } else if (kind == "constant") {
      z(i) = spec.value("value", 0.0);
    } else {
      throw ConfigError("unknown initial field kind \"" + kind + "\"");
    }
  }
  return z;
}

StepGraphon graphon_from_json(const json& target, int resolution) {
  if (target.is_number()) {
    return StepGraphon::constant(resolution, target.get<double>());
  }
  if (!target.is_array()) {
    throw ConfigError("rate targets must be numbers or square matrices");
  }
  const auto n = static_cast<Eigen::Index>(target.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = target.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
    }
  }
  return StepGraphon(std::move(m));
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

ExperimentReport run_simulate(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const int n = s.at("n").get<int>();
  if (n <= 0) {
    throw ConfigError("\"n\" must be positive");
  }
  const KernelPair pair = config.kernels->at_resolution(n);
  const double a = speed_of(s)(n);
  const auto mf = mean_field(pair);
  const auto initial = bernoulli_initial(initial_probabilities(pair, s.at("initial").get<std::string>()), config.seed);
  const auto traj = simulate(pair, a, initial, config.seed, config.parallel);
  const auto m = occupation(traj);

  ordered_json row;
  row["n"] = n;
  row["a"] = a;
  row["total_jumps"] = traj.total_jumps();
  row["mean_edge_density"] = m.mean();
  row["d_cut_to_w_star"] = cut_distance(m, mf.w_star).value;
  finish_row(row, report, config.seed);
  report.rows.push_back(row);

  PlotTable density{"edge_density", {"t", "empirical", "mean_field"}, {}};
  for (int k = 0; k <= 100; ++k) {
    const double t = k / 100.0;
    density.rows.push_back({t, snapshot(traj, t).mean(), mf.w.at(t).mean()});
  }
  report.plots.push_back(std::move(density));
  std::ostringstream csv;
  write_trajectories_csv(csv, traj);
  report.attachments.emplace_back("trajectories.csv", csv.str());
  return report;
}

ExperimentReport run_lln(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const auto ns = positive_ints(s, "n_schedule");
  const auto reps = positive_count(s, "reps");
  const auto samples = positive_count(s, "sample_times");
  const auto speed = speed_of(s);
  const auto full = mean_field(*config.kernels);

  std::vector<double> median_final;
  std::vector<double> median_integral;
  PlotTable plot{"lln_medians", {"n", "a", "median_d_cut_average", "median_d_cut_integral"}, {}};
  for (const int n : ns) {
    const KernelPair pair = config.kernels->at_resolution(n);
    const double a = speed(n);
    const StepGraphon probs = initial_probabilities(pair, s.at("initial").get<std::string>());
    const StepGraphon w_star = resample(full.w_star, n);
    const std::uint64_t n_seed = derive_seed(config.seed, static_cast<std::uint64_t>(n));
    std::vector<double> finals(reps);
    std::vector<double> integrals(reps);
    parallel_for(reps, config.parallel, [&](std::size_t r) {
      const std::uint64_t run_seed = derive_seed(n_seed, r);
      const HeuristicOptions cut_options{32, derive_seed(run_seed, 1)};
      const auto traj = simulate(pair, a, bernoulli_initial(probs, run_seed), run_seed, kSerial);
      finals[r] = cut_distance(occupation(traj), w_star, cut_options).value;
      double integral = 0.0;
      for (std::size_t k = 0; k < samples; ++k) {
        const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
        integral += cut_distance(snapshot(traj, t), resample(full.w.at(t), n), cut_options).value;
      }
      integrals[r] = integral / static_cast<double>(samples);
    });
    for (std::size_t r = 0; r < reps; ++r) {
      ordered_json row;
      row["n"] = n;
      row["a"] = a;
      row["replicate"] = r;
      row["d_cut_average"] = finals[r];
      row["d_cut_integral"] = integrals[r];
      finish_row(row, report, derive_seed(n_seed, r));
      report.rows.push_back(row);
    }
    median_final.push_back(median(finals));
    median_integral.push_back(median(integrals));
    plot.rows.push_back({static_cast<double>(n), a, median_final.back(), median_integral.back()});
  }
  report.plots.push_back(std::move(plot));
  report.summary["median_d_cut_average"] = median_final;
  report.summary["median_d_cut_integral"] = median_integral;

  const double final_tol = s.at("tolerances").at("final_cut").get<double>();
  const double integral_tol = s.at("tolerances").at("integral_cut").get<double>();
  report.verdicts.push_back({"median d_cut(M^n, w*) strictly decreasing in n", strictly_decreasing(median_final),
                             "medians " + join(median_final)});
  report.verdicts.push_back({"median d_cut(M^n, w*) < " + fmt(final_tol) + " at the last n",
                             median_final.back() < final_tol, "median " + fmt(median_final.back())});
  report.verdicts.push_back({"median Riemann integral of d_cut(H^n_t, w_t) < " + fmt(integral_tol) + " at the last n",
                             median_integral.back() < integral_tol, "median " + fmt(median_integral.back())});
  return report;
}

ExperimentReport run_ldp(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  if (!config.kernels->time_homogeneous()) {
    throw ConfigError("ldp experiments need time-homogeneous kernels; use ratefn for variational values");
  }
  const int n = s.at("n").get<int>();
  const double level = s.at("level").get<double>();
  if (n <= 0 || !(level > 0.0 && level < 1.0)) {
    throw ConfigError("ldp needs n > 0 and a level in (0, 1)");
  }
  const auto a_schedule = s.at("a_schedule").get<std::vector<double>>();
  const auto direct_reps = positive_count(s, "direct_reps");
  const auto is_reps = positive_count(s, "is_reps");
  const double direct_max_a = s.at("direct_max_a").get<double>();
  const double rel_tol = s.at("tolerances").at("slope_relative").get<double>();

  const KernelPair pair = config.kernels->at_resolution(n);
  const double i_hom = homogeneous_rate(StepGraphon::constant(n, level), pair);
  const StepGraphon probs = initial_probabilities(pair, s.at("initial").get<std::string>());
  const GraphEvent event = [level](const StepGraphon& m) { return m.mean() >= level; };
  const TiltPlan tilt =
      make_tilt(pair, TemporalStepGraphon::constant_in_time(StepGraphon::constant(n, level)), s.at("tilt_clip").get<double>());
  const double n2 = static_cast<double>(n) * n;

  auto add_row = [&](double a, const char* method, const RareEventEstimate& e, std::uint64_t seed) {
    ordered_json row;
    row["n"] = n;
    row["a"] = a;
    row["method"] = method;
    row["replications"] = e.replications;
    row["estimate"] = e.point_estimate;
    row["ci_half_width"] = e.ci_half_width;
    row["log_estimate"] = number(e.log_estimate);
    row["slope"] = number(-e.log_estimate / (a * n2));
    row["i_hom"] = i_hom;
    row["effective_sample_size"] = e.effective_sample_size;
    finish_row(row, report, seed);
    report.rows.push_back(row);
  };

  std::vector<double> slope_errors;
  double final_slope = std::numeric_limits<double>::quiet_NaN();
  bool consistent = true;
  std::string consistency_detail;
  PlotTable plot{"ldp_slopes", {"a", "slope_importance", "slope_direct", "i_hom"}, {}};
  for (std::size_t k = 0; k < a_schedule.size(); ++k) {
    const double a = a_schedule[k];
    double direct_slope = std::numeric_limits<double>::quiet_NaN();
    std::optional<RareEventEstimate> direct;
    if (a <= direct_max_a) {
      const std::uint64_t seed = derive_seed(config.seed, 2 * k);
      direct = estimate_rare_event(pair, a, probs, event, TiltPlan::identity(pair), direct_reps, seed,
                                   config.parallel);
      direct_slope = -direct->log_estimate / (a * n2);
      add_row(a, "direct", *direct, seed);
    }
    const std::uint64_t seed = derive_seed(config.seed, 2 * k + 1);
    const auto is = estimate_rare_event(pair, a, probs, event, tilt, is_reps, seed, config.parallel);
    add_row(a, "importance", is, seed);
    final_slope = -is.log_estimate / (a * n2);
    slope_errors.push_back(std::abs(final_slope - i_hom));
    plot.rows.push_back({a, final_slope, direct_slope, i_hom});
    if (direct) {
      const double gap = std::abs(direct->point_estimate - is.point_estimate);
      consistent = consistent && gap <= is.ci_half_width;
      consistency_detail += "a=" + fmt(a) + ": |direct - IS| = " + fmt(gap) + " vs CI " + fmt(is.ci_half_width) + "; ";
    }
  }
  report.plots.push_back(std::move(plot));
  report.summary["i_hom"] = i_hom;
  report.summary["final_slope"] = number(final_slope);

  const double allowed = i_hom > 0.0 ? rel_tol * i_hom : rel_tol;
  report.verdicts.push_back({"importance-sampled slope at the largest a within " + fmt(rel_tol) +
                                 (i_hom > 0.0 ? " relative" : " absolute") + " of I_hom",
                             std::isfinite(final_slope) && std::abs(final_slope - i_hom) <= allowed,
                             "slope " + fmt(final_slope) + " vs I_hom " + fmt(i_hom)});
  report.verdicts.push_back({"slope error nonincreasing in a", nonincreasing(slope_errors),
                             "errors " + join(slope_errors)});
  if (!consistency_detail.empty()) {
    report.verdicts.push_back({"direct Monte Carlo within the importance-sampling 95% CI", consistent,
                               consistency_detail});
  }
  return report;
}

ExperimentReport run_concentration(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const auto rows = concentration_check(*config.kernels, speed_of(s), positive_ints(s, "n_schedule"),
                                        s.at("deltas").get<std::vector<double>>(), positive_count(s, "reps"),
                                        config.seed, config.parallel);
  bool all_within = true;
  PlotTable plot{"concentration", {"n", "delta", "empirical", "bound", "standard_error"}, {}};
  for (const auto& r : rows) {
    ordered_json row;
    row["n"] = r.n;
    row["a"] = r.a;
    row["delta"] = r.delta;
    row["replications"] = r.replications;
    row["empirical"] = r.empirical;
    row["bound"] = r.bound;
    row["standard_error"] = r.standard_error;
    row["certified"] = r.certified;
    row["within_envelope"] = r.within_envelope();
    finish_row(row, report, config.seed);
    report.rows.push_back(row);
    all_within = all_within && r.within_envelope();
    plot.rows.push_back({static_cast<double>(r.n), r.delta, r.empirical, r.bound, r.standard_error});
  }
  report.plots.push_back(std::move(plot));
  report.verdicts.push_back(
      {"empirical deviation frequency within bound + 3 SE everywhere", all_within, std::to_string(rows.size()) + " cells"});
  return report;
}

ExperimentReport run_dynamics(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const auto spec = dynamics_spec(s.at("spec"));
  const auto ns = positive_ints(s, "n_schedule");
  const auto reps = positive_count(s, "reps");
  const int m = s.at("space_resolution").get<int>();
  const auto points = positive_count(s, "output_points");
  if (m <= 0) {
    throw ConfigError("\"space_resolution\" must be positive");
  }
  std::vector<double> grid;
  for (std::size_t k = 0; k <= points; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(points));
  }
  const ParticleOptions particle_options{s.at("h_max").get<double>()};
  const ContinuumOptions continuum_options{s.at("h_max").get<double>()};
  const WeakNormBasis basis;
  const auto speed = speed_of(s);

  const auto continuum = continuum_solve(mean_field(*config.kernels).w, *spec, initial_field(s.at("initial_field"), m),
                                         m, grid, continuum_options);
  bool class_ok = check_solution_class(continuum).passed;

  std::vector<double> medians;
  PlotTable plot{"dynamics_medians", {"n", "a", "median_sup_weak_distance"}, {}};
  for (const int n : ns) {
    const KernelPair pair = config.kernels->at_resolution(n);
    const double a = speed(n);
    const StepGraphon probs = initial_probabilities(pair, s.at("initial").get<std::string>());
    const Eigen::VectorXd z = initial_field(s.at("initial_field"), n);
    const std::uint64_t n_seed = derive_seed(config.seed, static_cast<std::uint64_t>(n));
    std::vector<double> distances(reps);
    std::vector<char> in_class(reps);
    parallel_for(reps, config.parallel, [&](std::size_t r) {
      const std::uint64_t run_seed = derive_seed(n_seed, r);
      const auto traj = simulate(pair, a, bernoulli_initial(probs, run_seed), run_seed, kSerial);
      const auto particles = integrate_particles(traj, *spec, z, grid, particle_options);
      distances[r] = sup_weak_distance(particles, continuum, basis);
      in_class[r] = check_solution_class(particles).passed ? 1 : 0;
    });
    for (std::size_t r = 0; r < reps; ++r) {
      ordered_json row;
      row["n"] = n;
      row["a"] = a;
      row["replicate"] = r;
      row["sup_weak_distance"] = distances[r];
      row["solution_class_ok"] = in_class[r] != 0;
      finish_row(row, report, derive_seed(n_seed, r));
      report.rows.push_back(row);
      class_ok = class_ok && in_class[r] != 0;
    }
    medians.push_back(median(distances));
    plot.rows.push_back({static_cast<double>(n), a, medians.back()});
  }
  report.plots.push_back(std::move(plot));
  report.summary["median_sup_weak_distance"] = medians;
  report.verdicts.push_back({"median sup weak distance nonincreasing in n", nonincreasing(medians),
                             "medians " + join(medians)});

  if (!s.at("frozen_check").is_null()) {
    const int nf = s.at("frozen_check").at("n").get<int>();
    const double tol = s.at("frozen_check").at("tolerance").get<double>();
    const auto edges = static_cast<std::size_t>(nf) * nf;
    const EdgeTrajectorySet complete(nf, 1.0, std::vector<std::uint8_t>(edges, 1),
                                     std::vector<std::vector<double>>(edges), config.seed);
    const Eigen::VectorXd z = initial_field(s.at("initial_field"), nf);
    const auto particles = integrate_particles(complete, *spec, z, grid, particle_options);
    const auto reference =
        continuum_solve(TemporalStepGraphon::constant_in_time(StepGraphon::constant(1, 1.0)), *spec, z, nf, grid,
                        continuum_options);
    const double d = sup_weak_distance(particles, reference, basis);
    class_ok = class_ok && check_solution_class(particles).passed && check_solution_class(reference).passed;
    report.summary["frozen_complete_graph_distance"] = d;
    report.verdicts.push_back({"frozen complete graph matches the W = 1 continuum within " + fmt(tol), d <= tol,
                               "sup weak distance " + fmt(d) + " at n = " + std::to_string(nf)});
  }
  report.verdicts.push_back({"all fields inside the solution class", class_ok, ""});

  std::ostringstream field;
  write_field_csv(field, continuum);
  report.attachments.emplace_back("continuum_field.csv", field.str());
  return report;
}

ExperimentReport run_ratefn(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const KernelPair& pair = *config.kernels;
  const auto& targets = s.at("targets");
  const auto& expected = s.at("expected");
  if (!targets.is_array() || targets.empty()) {
    throw ConfigError("ratefn needs a nonempty \"targets\" array");
  }
  if (!expected.empty() && expected.size() != targets.size()) {
    throw ConfigError("\"expected\" must be empty or match \"targets\" in length");
  }
  const std::optional<KernelPair>& perturbed = config.perturbed_kernels;
  const double tol = s.at("tolerance").get<double>();
  const double collapse_tol = s.at("collapse_tolerance").get<double>();

  bool converged = true;
  bool expected_ok = true;
  bool collapse_ok = true;
  bool envelope_ok = true;
  const double envelope = perturbed ? rate_perturbation_bound(pair, *perturbed) : 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const StepGraphon f = graphon_from_json(targets[k], pair.resolution());
    const auto solution = variational_rate(f, pair);
    const double hom = pair.time_homogeneous() ? homogeneous_rate(f, pair) : std::numeric_limits<double>::quiet_NaN();
    converged = converged && solution.converged;
    const double reference = std::isfinite(hom) ? hom : solution.value;
    double error = std::numeric_limits<double>::quiet_NaN();
    if (!expected.empty() && !expected[k].is_null()) {
      error = std::abs(reference - expected[k].get<double>());
      expected_ok = expected_ok && error <= tol;
    }
    if (std::isfinite(hom)) {
      collapse_ok = collapse_ok && std::abs(hom - solution.value) <= collapse_tol;
    }
    double perturbed_value = std::numeric_limits<double>::quiet_NaN();
    if (perturbed) {
      perturbed_value = variational_rate(f, *perturbed).value;
      envelope_ok = envelope_ok && std::abs(perturbed_value - solution.value) <= envelope + 1e-9;
    }
    ordered_json row;
    row["target"] = k;
    row["resolution"] = f.resolution();
    row["i_variational"] = solution.value;
    row["i_hom"] = number(hom);
    row["constraint_residual"] = solution.constraint_residual;
    row["converged"] = solution.converged;
    row["expected"] = expected.empty() || expected[k].is_null() ? ordered_json(nullptr) : ordered_json(expected[k]);
    row["abs_error"] = number(error);
    row["i_perturbed"] = number(perturbed_value);
    finish_row(row, report, config.seed);
    report.rows.push_back(row);
  }
  report.verdicts.push_back({"every variational solve converged", converged, ""});
  if (!expected.empty()) {
    report.verdicts.push_back({"rate values match expectations within " + fmt(tol), expected_ok, ""});
  }
  if (pair.time_homogeneous()) {
    report.verdicts.push_back(
        {"variational value equals the homogeneous formula within " + fmt(collapse_tol), collapse_ok, ""});
  }
  if (perturbed) {
    report.summary["perturbation_bound"] = envelope;
    report.verdicts.push_back({"kernel perturbation moves the rate by at most the envelope", envelope_ok,
                               "envelope " + fmt(envelope)});
  }
  return report;
}

ExperimentReport run_cutnorm(const ExperimentConfig& config) {
  const json& s = config.settings;
  auto report = start_report(config);
  const int n = s.at("n").get<int>();
  if (n <= 0 || n > kExactCutResolution) {
    throw ConfigError("cutnorm needs 0 < n <= " + std::to_string(kExactCutResolution) + " for the exhaustive oracle");
  }
  const auto instances = positive_count(s, "instances");
  const int restarts = s.at("restarts").get<int>();
  const auto required = s.at("required_matches").get<std::size_t>();

  struct Outcome {
    double exact = 0.0;
    double heuristic = 0.0;
    double cut = 0.0;
  };
  std::vector<Outcome> outcomes(instances);
  parallel_for(instances, config.parallel, [&](std::size_t k) {
    const std::uint64_t seed = derive_seed(config.seed, k);
    Eigen::MatrixXd diff(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CounterStream stream(seed, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             StreamPurpose::auxiliary);
        diff(i, j) = stream.uniform() - stream.uniform();
      }
    }
    outcomes[k].exact = inf_to_one_norm(diff, CutMode::exact).value;
    outcomes[k].heuristic =
        inf_to_one_norm(diff, CutMode::heuristic, HeuristicOptions{restarts, derive_seed(seed, 1)}).value;
    outcomes[k].cut = cut_norm(diff).value;
  });

  std::size_t matches = 0;
  bool sandwich = true;
  for (std::size_t k = 0; k < instances; ++k) {
    const auto& o = outcomes[k];
    const bool match = std::abs(o.exact - o.heuristic) <= 1e-12;
    const bool sandwiched = o.cut <= o.exact + 1e-12 && o.exact <= 4.0 * o.cut + 1e-12;
    matches += match ? 1 : 0;
    sandwich = sandwich && sandwiched;
    ordered_json row;
    row["instance"] = k;
    row["n"] = n;
    row["d_inf_one_exact"] = o.exact;
    row["d_inf_one_heuristic"] = o.heuristic;
    row["d_cut"] = o.cut;
    row["match"] = match;
    row["sandwich"] = sandwiched;
    finish_row(row, report, derive_seed(config.seed, k));
    report.rows.push_back(row);
  }
  report.summary["matches"] = matches;
  report.verdicts.push_back({"heuristic matches exhaustive enumeration on at least " + std::to_string(required) +
                                 " instances",
                             matches >= required, std::to_string(matches) + " of " + std::to_string(instances)});
  report.verdicts.push_back({"d_cut <= d_inf->1 <= 4 d_cut on every instance", sandwich, ""});
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::simulate:
      return run_simulate(config);
    case ExperimentKind::lln:
      return run_lln(config);
    case ExperimentKind::ldp:
      return run_ldp(config);
    case ExperimentKind::concentration:
      return run_concentration(config);
    case ExperimentKind::dynamics:
      return run_dynamics(config);
    case ExperimentKind::ratefn:
      return run_ratefn(config);
    case ExperimentKind::cutnorm:
      return run_cutnorm(config);
  }
  throw ConfigError("unhandled experiment kind");
}

}  // namespace tgraphon
