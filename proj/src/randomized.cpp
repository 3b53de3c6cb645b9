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

#include "rsr/randomized.hpp"

#include <algorithm>

#include "rsr/errors.hpp"

namespace rsr {

SamplingBound success_probability_lower_bound(int n, int d, int m) {
  if (!(1 <= d && d < n && n <= m)) {
    throw ArgumentError("sampling bound needs 1 <= d < n <= m");
  }
  SamplingBound b;
  b.n = n;
  b.d = d;
  b.m = m;
  b.generic_bound = 1.0 / (2.0 * n * n * static_cast<double>(m));
  b.effective = b.generic_bound;
  if (m >= 6 * n + 2 && n >= 3) {
    const double ratio = static_cast<double>(d) / n;
    b.improved_bound = ratio * ratio / 2.0;
    b.effective = std::max(b.effective, *b.improved_bound);
  }
  return b;
}

long default_max_iterations(int n, int m) {
  return 100L * 2L * n * n * m;
}

IndexSet sample_subset(std::mt19937_64& rng, int k, std::vector<int>& pool) {
  const int m = static_cast<int>(pool.size());
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, m - 1);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(pick(rng))]);
  }
  IndexSet out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

RecoveryResult randomized_find(const PointSet& points, std::uint64_t seed,
                               long max_iterations, const Tolerances& tol) {
  const int n = points.dimension();
  const int m = points.size();
  if (max_iterations <= 0) max_iterations = default_max_iterations(n, m);
  std::mt19937_64 rng(seed);
  std::vector<int> pool = iota_set(m);
  for (long it = 1; it <= max_iterations; ++it) {
    IndexSet v = sample_subset(rng, n, pool);
    if (numerical_rank(points.columns(v), tol.rank_scale) < n) {
      RecoveryResult r = recover_from_dependence(
          points, DependenceWitness::from_subset(points, std::move(v), tol),
          tol);
      r.iterations = it;
      r.method = RecoveryMethod::randomized;
      return r;
    }
  }
  throw TimeoutError("no rank-deficient sample in " +
                         std::to_string(max_iterations) +
                         " iterations; the inlier fraction is likely at most "
                         "d/n or the points are not in general position",
                     max_iterations);
}

namespace {

double gram_det_of(const PointSet& points, const IndexSet& v) {
  return gram_determinant(points.columns(v));
}

}  // namespace

RecoveryResult randomized_find_noisy(const PointSet& points, int d,
                                     NoiseGapConfig gap, std::uint64_t seed,
                                     long max_iterations) {
  const int n = points.dimension();
  const int m = points.size();
  if (!(1 <= d && d < n)) throw ArgumentError("noisy recovery needs 1 <= d < n");
  if (max_iterations <= 0) max_iterations = default_max_iterations(n, m);
  const double c2 = gap.c_squared;
  std::mt19937_64 rng(seed);
  std::vector<int> pool = iota_set(m);
  for (long it = 1; it <= max_iterations; ++it) {
    IndexSet v = sample_subset(rng, n, pool);
    if (!(gram_det_of(points, v) < c2)) continue;

    // Shrink to d + 1 elements, always dropping the lowest qualifying index.
    while (static_cast<int>(v.size()) > d + 1) {
      bool removed = false;
      for (std::size_t k = 0; k < v.size(); ++k) {
        IndexSet smaller = v;
        smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
        if (gram_det_of(points, smaller) < c2) {
          v = std::move(smaller);
          removed = true;
          break;
        }
      }
      if (!removed) {
        throw GapViolationError(
            "no element can be removed while keeping det < C^2; the "
            "determinant gap does not hold for this threshold");
      }
    }

    // v now holds d + 1 inliers. Any point that can replace a member of v
    // without breaking the test is an inlier as well.
    IndexSet inliers = v;
    for (int cand = 0; cand < m; ++cand) {
      if (std::binary_search(v.begin(), v.end(), cand)) continue;
      for (std::size_t k = 0; k < v.size(); ++k) {
        IndexSet swapped = v;
        swapped[k] = cand;
        std::sort(swapped.begin(), swapped.end());
        if (gram_det_of(points, swapped) < c2) {
          inliers.push_back(cand);
          break;
        }
      }
    }
    std::sort(inliers.begin(), inliers.end());

    RecoveryResult r;
    r.subspace_basis = best_fit_basis(points.columns(inliers), d);
    r.inliers = std::move(inliers);
    r.iterations = it;
    r.method = RecoveryMethod::randomized_det;
    return r;
  }
  throw TimeoutError("no sample passed the determinant test in " +
                         std::to_string(max_iterations) + " iterations",
                     max_iterations);
}

}  // namespace rsr
