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

#ifndef TGRAPHON_CUT_NORM_HPP
#define TGRAPHON_CUT_NORM_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tgraphon/graphon.hpp"

/**
 * \file
 * \brief Cut-type distances between step graphons of equal resolution.
 *
 * For block functions the suprema over measurable sets or [-1,1]-valued test
 * functions are attained on block-aligned choices, so everything reduces to
 * finite searches over subsets or sign vectors of [n].
 */

namespace tgraphon {

/// Largest n for which sign vectors / subsets are enumerated exhaustively.
inline constexpr int kExactCutResolution = 22;
/// Largest n for which all vertex permutations are enumerated.
inline constexpr int kExactPermutationResolution = 8;

enum class CutMode { exact, heuristic };

/// Restart count and seed of the alternating-ascent heuristics.
struct HeuristicOptions {
  int restarts = 32;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct CutNormResult {
  double value = 0.0;
  std::vector<int> witness_a;  ///< row signs in {-1,+1}
  std::vector<int> witness_b;  ///< column signs in {-1,+1}
  bool certified = false;      ///< true when the value is the exact maximum
};

struct CutDistanceResult {
  double value = 0.0;
  std::vector<bool> rows;  ///< S
  std::vector<bool> cols;  ///< T
  bool certified = false;
};

struct RelabelResult {
  double value = 0.0;
  std::vector<int> permutation;  ///< g is compared as g(sigma(i), sigma(j))
  bool exhaustive = false;       ///< every permutation was tried
  bool certified = false;        ///< every cut evaluation was exact (value bounds delta_cut from above)
};

/// max over a,b in {-1,1}^n of (1/n^2) sum a_i b_j D_ij.
CutNormResult inf_to_one_norm(const Eigen::MatrixXd& diff, CutMode mode, const HeuristicOptions& options = {});

/// d_{inf->1}(f, g) = inf_to_one_norm(f - g).
CutNormResult inf_to_one_distance(const StepGraphon& f, const StepGraphon& g, CutMode mode,
                                  const HeuristicOptions& options = {});

/// sup over S,T subsets of [n] of |(1/n^2) sum_{S x T} D_ij|; exact up to kExactCutResolution.
CutDistanceResult cut_norm(const Eigen::MatrixXd& diff, const HeuristicOptions& options = {});

CutDistanceResult cut_distance(const StepGraphon& f, const StepGraphon& g, const HeuristicOptions& options = {});

/// g^sigma(i,j) = g(sigma(i), sigma(j)).
StepGraphon relabel(const StepGraphon& g, const std::vector<int>& sigma);

/// Upper bound on the cut distance up to relabeling: min over tried sigma of d_cut(f, g^sigma).
/**
 * All n! permutations are enumerated for n <= kExactPermutationResolution.
 * Larger instances start from the identity and a degree-matched permutation
 * and apply improving transpositions until `budget` cut evaluations are spent.
 */
RelabelResult relabeled_cut_distance(const StepGraphon& f, const StepGraphon& g, int budget = 2000,
                                     const HeuristicOptions& options = {});

}  // namespace tgraphon

#endif
