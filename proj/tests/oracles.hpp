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

// Reference implementations used only by tests. None of them share code
// paths with the library: ranks come from LU pivots or determinants rather
// than singular values, and polytope membership from a linear program.

#ifndef RSR_TESTS_ORACLES_HPP_
#define RSR_TESTS_ORACLES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace rsr::testing {

// Square A_V is treated as singular when |det| <= rel * prod ||columns||.
bool det_independent(const Eigen::MatrixXd& square, double rel = 1e-9);

// Rank from full-pivot LU with a relative pivot threshold.
int lu_rank(const Eigen::MatrixXd& a, double rel = 1e-9);

// Condition 1 by determinant sign over all n-subsets.
bool condition1_by_det(const Eigen::MatrixXd& a, const std::vector<int>& inliers,
                       int d);

// Enumerates every singular n-subset, takes an LU kernel vector, and returns
// the set of columns lying in the span of its support. Returns nullopt if no
// n-subset is singular or if two subsets disagree.
std::optional<std::vector<int>> kernel_enumeration_inliers(const Eigen::MatrixXd& a);

// min over all U of rank(U) - x(U), with LU ranks.
double brute_force_edmonds(const Eigen::MatrixXd& a, const Eigen::VectorXd& x);

// Convex-hull membership by phase-1 simplex over enumerated indicator
// vectors: bases (basis polytope) or all independent sets.
bool lp_hull_membership(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                        bool basis_only, double tol = 1e-9);

// Gram determinant det(B^T B) as the squared product of the R diagonal of
// a Householder QR of B.
double gram_det_qr(const Eigen::MatrixXd& b);

std::vector<std::vector<int>> all_subsets_of_size(int m, int k);

Eigen::MatrixXd random_gaussian(int rows, int cols, std::uint64_t seed);

}  // namespace rsr::testing

#endif  // RSR_TESTS_ORACLES_HPP_
