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

#ifndef RSR_RADIAL_HPP_
#define RSR_RADIAL_HPP_

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "rsr/instance.hpp"
#include "rsr/matroid.hpp"

namespace rsr {

// Points together with a coefficient vector c: coordinates in [0, 1]
// summing to n.
class BartheProblem {
 public:
  BartheProblem(PointSet points, Eigen::VectorXd c, double tol = 1e-9);

  const PointSet& points() const { return points_; }
  const Eigen::VectorXd& c() const { return c_; }

 private:
  PointSet points_;
  Eigen::VectorXd c_;
};

// The uniform coefficient vector (n/m) * 1.
Eigen::VectorXd uniform_coefficients(const PointSet& points);

// log det(sum_j e^{t_j} u_j u_j^T), evaluated with a shift so large t does
// not overflow. Throws EvaluationError if the matrix is not positive
// definite.
double log_det_weighted(const PointSet& points, const Eigen::VectorXd& t);

// <c, t> - log det(A e^T A^T), the concave function being maximized.
double objective(const BartheProblem& problem, const Eigen::VectorXd& t);

// c_j - e^{t_j} <u_j, (A e^T A^T)^{-1} u_j>.
Eigen::VectorXd gradient(const BartheProblem& problem,
                         const Eigen::VectorXd& t);

// sum over n-subsets I of e^{sum_{j in I} t_j} det(A_I A_I^T).
double cauchy_binet_expand(const PointSet& points, const Eigen::VectorXd& t,
                           unsigned long long budget = kDefaultEnumerationBudget);

struct EffectiveBounds {
  double alpha = 0.0;
  // Smallest nonzero det(A_I A_I^T) over n-subsets.
  double min_basis_det = 0.0;
  // det(A A^T), the sum of all det(A_I A_I^T).
  double total_det = 0.0;
  // log(1/D): the maximum value is below this whenever c is in K_A.
  double value_bound = 0.0;
  // max(0, (2/alpha) log(1/D)).
  double norm_bound = 0.0;
  // (1/alpha) log(det(A A^T) / D), which does not depend on how the points
  // are scaled.
  double scale_free_norm_bound = 0.0;
};

EffectiveBounds effective_bounds(const PointSet& points, double alpha,
                                 const Tolerances& tol = {},
                                 unsigned long long budget = kDefaultEnumerationBudget);

enum class BartheStatus { converged, outside_polytope, iteration_cap };

std::string to_string(BartheStatus status);

struct BartheOptions {
  // Converged when |gradient|_inf <= tolerance.
  double tolerance = 1e-9;
  long max_iterations = 10000;
  // Decide membership of c in the basis polytope before optimizing.
  bool membership_precheck = true;
  int precheck_max_points = 100;
  MembershipMode membership_mode = MembershipMode::automatic;
  // Keep iterates in the box 0 <= t <= bound + box_margin (when bounds are
  // supplied) and report outside_polytope when pinned against the ceiling
  // with an outward gradient.
  bool enforce_box = true;
  double box_margin = 1.0;
};

struct BartheSolution {
  // Gauge-fixed: min_j t_j = 0.
  Eigen::VectorXd t;
  // Objective at t; +infinity when c lies outside the basis polytope.
  double value = 0.0;
  // (A e^T A^T)^{-1/2}; empty unless an optimum estimate exists.
  Eigen::MatrixXd transform;
  // max entry of |sum_j c_j v_j v_j^T - Id| with v_j = R u_j / |R u_j|.
  double residual_norm = 0.0;
  BartheStatus status = BartheStatus::iteration_cap;
  long iterations = 0;
  // Why outside_polytope was declared: "membership", "value_bound" or "box".
  std::string outside_reason;
  std::optional<MembershipAnswer> membership;
  // Whether every pair i, j admits an (n-1)-set S with S+i and S+j bases;
  // empty when not computed.
  std::optional<bool> pairwise_support;
};

BartheSolution solve_barthe(const BartheProblem& problem,
                            const std::optional<EffectiveBounds>& bounds,
                            const BartheOptions& options = {},
                            const Tolerances& tol = {});

struct IsotropyResidual {
  double inf_norm = 0.0;
  Eigen::MatrixXd j;
};

// J = sum_i c_i v_i v_i^T - Id with v_i = R u_i / |R u_i|.
IsotropyResidual verify_radial_isotropy(const PointSet& points,
                                        const Eigen::VectorXd& c,
                                        const Eigen::MatrixXd& r);

struct MidpointGap {
  // (phi(s) + phi(t)) / 2 - phi((s + t) / 2), nonnegative by convexity.
  double gap = 0.0;
  // b^2 exp(-(n+1)(|s|_inf + |t|_inf)) D^2 / det(A A^T).
  double lemma_bound = 0.0;
  // b = min_a |s + a 1 - t|_inf.
  double separation = 0.0;
  // s, t >= 0 and the pairwise support condition holds.
  bool preconditions_hold = false;
};

MidpointGap concavity_midpoint_gap(const PointSet& points,
                                   const Eigen::VectorXd& s,
                                   const Eigen::VectorXd& t,
                                   const Tolerances& tol = {},
                                   unsigned long long budget = kDefaultEnumerationBudget);

// For every pair i, j there is an (n-1)-subset S with S+i and S+j bases.
bool pairwise_support_condition(const PointSet& points,
                                const Tolerances& tol = {},
                                unsigned long long budget = kDefaultEnumerationBudget);

// Largest alpha with c in (1 - alpha) K_A under the dilation that keeps the
// sum and box constraints: 1 - max c(S) / rank(S) over nonempty proper
// subsets S. Returns -infinity when c violates the sum or box constraints.
// Exhaustive; at most kExhaustiveLimit points.
double dilation_slack(const PointSet& points, const Eigen::VectorXd& c,
                      const Tolerances& tol = {});

bool in_dilated_basis_polytope(const PointSet& points, const Eigen::VectorXd& c,
                               double alpha, const Tolerances& tol = {});

}  // namespace rsr

#endif  // RSR_RADIAL_HPP_
