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

#ifndef RSR_LINALG_HPP_
#define RSR_LINALG_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rsr {

// Sorted, duplicate-free list of 0-based column indices.
using IndexSet = std::vector<int>;

// Numerical cutoffs shared by every module. The defaults are the documented
// library defaults; the CLI exposes each of them as a flag.
struct Tolerances {
  // Singular values below sigma_max * max(rows, cols) * eps * rank_scale
  // count as zero.
  double rank_scale = 100.0;
  // dist(u, T) <= member * |u| counts as membership in T.
  double member = 1e-8;
  // |u_i| <= support * |u|_inf drops i from a kernel vector's support.
  double support = 1e-8;
  // |A_V u| <= kernel_residual * sigma_max(A_V) * |u| for a valid witness.
  double kernel_residual = 1e-8;
  // Edmonds gap below -membership means "outside".
  double membership = 1e-7;
};

// Default number of subsets an exhaustive check may visit.
inline constexpr unsigned long long kDefaultEnumerationBudget = 1'000'000ULL;

double rank_threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols,
                      double rank_scale);

int numerical_rank(const Eigen::MatrixXd& a, double rank_scale);

// Columns of `a` at `idx`, in the given order.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& a,
                               std::span<const int> idx);

// Orthonormal basis (n x r) of the column space, r = numerical rank.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a,
                                  double rank_scale);

// Top-k left singular vectors: the best-fit k-dimensional column space.
Eigen::MatrixXd best_fit_basis(const Eigen::MatrixXd& a, int k);

// Euclidean distance from v to span(basis); basis must be orthonormal.
double distance_to_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& basis);

// det(A^T A) computed as the product of squared singular values, so the
// result is never negative. The empty product is 1.
double gram_determinant(const Eigen::MatrixXd& a);

// Unit right singular vector of `a` for its smallest singular value.
Eigen::VectorXd smallest_right_singular_vector(const Eigen::MatrixXd& a);

// Symmetric inverse square root of an SPD matrix; eigenvalues below
// floor_ratio * lambda_max are raised to that floor.
Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& m,
                                 double floor_ratio = 1e-14);

}  // namespace rsr

#endif  // RSR_LINALG_HPP_
