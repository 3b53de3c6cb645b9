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

#ifndef RSR_INSTANCE_HPP_
#define RSR_INSTANCE_HPP_

#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "rsr/linalg.hpp"

namespace rsr {

// m points in R^n stored as the columns of an n x m matrix of full row rank.
class PointSet {
 public:
  // Throws ArgumentError unless m >= n >= 1 and the numerical rank is n.
  explicit PointSet(Eigen::MatrixXd columns, const Tolerances& tol = {});

  int dimension() const { return static_cast<int>(a_.rows()); }
  int size() const { return static_cast<int>(a_.cols()); }
  const Eigen::MatrixXd& matrix() const { return a_; }
  Eigen::MatrixXd columns(std::span<const int> idx) const {
    return select_columns(a_, idx);
  }

 private:
  Eigen::MatrixXd a_;
};

// A PointSet with its ground truth: the planted subspace and inlier set.
struct LabeledInstance {
  PointSet points;
  int d = 0;
  // n x d orthonormal basis of the planted subspace T.
  Eigen::MatrixXd subspace_basis;
  IndexSet inliers;
  // Max distance of an inlier from T relative to its norm.
  double noise_scale = 0.0;
};

struct PlantedParams {
  int n = 0;
  int d = 0;
  int m = 0;
  int inliers = 0;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
};

LabeledInstance generate_planted(const PlantedParams& params,
                                 const Tolerances& tol = {});

// A size-n column subset together with a vector in the kernel of A_V.
struct DependenceWitness {
  IndexSet subset;
  // Length-m vector supported on `subset`.
  Eigen::VectorXd kernel_vector;
  IndexSet support;

  // Kernel vector from the smallest right singular vector of A_V; the
  // support drops entries below tol.support * |u|_inf.
  static DependenceWitness from_subset(const PointSet& points, IndexSet subset,
                                       const Tolerances& tol = {});
};

enum class RecoveryMethod { randomized, randomized_det, derandomized };

std::string to_string(RecoveryMethod method);

struct RecoveryResult {
  IndexSet inliers;
  // n x d' orthonormal basis of the recovered subspace.
  Eigen::MatrixXd subspace_basis;
  long iterations = 0;
  RecoveryMethod method = RecoveryMethod::randomized;
};

// Condition 1 by exhaustive enumeration of all size-n column subsets:
// rank(A_V) = n exactly when V holds at most d inliers.
bool check_condition_general(
    const LabeledInstance& instance, const Tolerances& tol = {},
    unsigned long long budget = kDefaultEnumerationBudget);

struct Condition2Report {
  bool holds = false;
  // min det(A_V^T A_V) over nonempty |V| <= n with at most d inliers.
  double det_low_side = 0.0;
  // max det(A_V^T A_V) over |V| <= n with at least d + 1 inliers.
  double det_high_side = 0.0;

  // Geometric mean of the two sides: a threshold strictly inside the gap.
  double mid_gap() const;
};

Condition2Report check_condition_general2(
    const LabeledInstance& instance,
    unsigned long long budget = kDefaultEnumerationBudget);

// Spans the witness support and collects every column lying in that span.
RecoveryResult recover_from_dependence(const PointSet& points,
                                       const DependenceWitness& witness,
                                       const Tolerances& tol = {});

struct BasisDeterminant {
  // min over bases I of det(A_I A_I^T).
  double value = 0.0;
  IndexSet basis;
};

BasisDeterminant smallest_nonzero_basis_determinant(
    const PointSet& points, const Tolerances& tol = {},
    unsigned long long budget = kDefaultEnumerationBudget);

// Sorted-set helpers.
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet iota_set(int size);

}  // namespace rsr

#endif  // RSR_INSTANCE_HPP_
