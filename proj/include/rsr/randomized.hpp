// Copyright 2026 The rsr Authors.
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

#ifndef RSR_RANDOMIZED_HPP_
#define RSR_RANDOMIZED_HPP_

#include <cstdint>
#include <optional>
#include <random>

#include "rsr/instance.hpp"

namespace rsr {

// Lower bounds on the probability that a uniform size-n sample holds at
// least d + 1 inliers when more than a d/n fraction of the m points are
// inliers.
struct SamplingBound {
  int n = 0;
  int d = 0;
  int m = 0;
  // 1 / (2 n^2 m); always valid.
  double generic_bound = 0.0;
  // (d/n)^2 / 2; valid only when m >= 6n + 2 and n >= 3.
  std::optional<double> improved_bound;
  double effective = 0.0;
};

SamplingBound success_probability_lower_bound(int n, int d, int m);

// 100 * 2n^2 m: exhausting this many rounds has probability below e^-100
// on instances that meet the generic bound.
long default_max_iterations(int n, int m);

// Draws k distinct indices from [0, m) by a partial Fisher-Yates shuffle of
// `pool`, which must hold a permutation of [0, m) and is left permuted.
IndexSet sample_subset(std::mt19937_64& rng, int k, std::vector<int>& pool);

// Las Vegas recovery: sample size-n column sets until one is rank deficient,
// then recover the inliers from its kernel. Throws TimeoutError after
// max_iterations rounds (0 selects the default).
RecoveryResult randomized_find(const PointSet& points, std::uint64_t seed,
                               long max_iterations = 0,
                               const Tolerances& tol = {});

// Threshold C^2 on Gram determinants separating inlier-heavy column sets
// from the rest.
struct NoiseGapConfig {
  double c_squared = 0.0;
};

// Noise-tolerant recovery driven by Gram-determinant comparisons against
// C^2. Needs the subspace dimension d. Throws TimeoutError when no sample
// passes the test and GapViolationError when the shrinking step finds no
// removable element.
RecoveryResult randomized_find_noisy(const PointSet& points, int d,
                                     NoiseGapConfig gap, std::uint64_t seed,
                                     long max_iterations = 0);

}  // namespace rsr

#endif  // RSR_RANDOMIZED_HPP_
