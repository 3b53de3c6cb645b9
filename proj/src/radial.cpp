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

#include "rsr/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "rsr/errors.hpp"
#include "rsr/subsets.hpp"

namespace rsr {

BartheProblem::BartheProblem(PointSet points, Eigen::VectorXd c, double tol)
    : points_(std::move(points)), c_(std::move(c)) {
  if (c_.size() != points_.size()) {
    throw ArgumentError("coefficient vector length must equal the point count");
  }
  if (std::abs(c_.sum() - points_.dimension()) > tol * points_.dimension()) {
    throw ArgumentError("coefficients must sum to n");
  }
  if ((c_.array() < -tol).any() || (c_.array() > 1.0 + tol).any()) {
    throw ArgumentError("coefficients must lie in [0, 1]");
  }
}

Eigen::VectorXd uniform_coefficients(const PointSet& points) {
  return Eigen::VectorXd::Constant(
      points.size(), static_cast<double>(points.dimension()) / points.size());
}

namespace {

// Eigen's packet exp clamps large negative arguments to a denormal instead of
// returning 0, which silently corrupts log det for extreme weights.
Eigen::VectorXd exp_of(const Eigen::VectorXd& v) {
  return v.unaryExpr([](double x) { return std::exp(x); });
}

// Factorization of M = A e^T A^T shared by value, gradient and Hessian.
// Weights are shifted by max t, so M_scaled = e^{-shift} M. The weighted
// points are factored by a pivoted QR with rows sorted by weight, which keeps
// leverages accurate when the weights span many orders of magnitude.
struct WeightedGram {
  double shift = 0.0;
  double log_det = 0.0;
  // n x m, orthonormal rows; column j is the whitened point e^{t_j/2} L^{-1} u_j
  // for some square root L of M.
  Eigen::MatrixXd basis;
};

WeightedGram factor(const Eigen::MatrixXd& a, const Eigen::VectorXd& t) {
  if (!t.allFinite()) throw EvaluationError("non-finite weights", 0.0);
  const Eigen::Index n = a.rows();
  const Eigen::Index m = a.cols();
  const double range = t.maxCoeff() - t.minCoeff();
  WeightedGram w;
  w.shift = t.maxCoeff();
  const Eigen::VectorXd half = exp_of((t.array() - w.shift) / 2.0);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return t(i) > t(j); });
  Eigen::MatrixXd rows(m, n);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    rows.row(k) = half(j) * a.col(j).transpose();
  }
  if (m < n) {
    throw EvaluationError("weighted Gram matrix is singular", range);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rows);
  const Eigen::MatrixXd& r = qr.matrixQR();
  double ld = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::abs(r(i, i));
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw EvaluationError(
          "weighted Gram matrix is singular; weight range e^" +
              std::to_string(range),
          range);
    }
    ld += std::log(d);
  }
  w.log_det = 2.0 * ld + static_cast<double>(n) * w.shift;
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
  w.basis.resize(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    w.basis.col(order[static_cast<std::size_t>(k)]) = q.row(k).transpose();
  }
  return w;
}

// Q = W^T W is the projection whose diagonal is e^{t_j} u_j^T M^{-1} u_j.
const Eigen::MatrixXd& whitened(const Eigen::MatrixXd&, const Eigen::VectorXd&,
                                const WeightedGram& w) {
  return w.basis;
}

}  // namespace

double log_det_weighted(const PointSet& points, const Eigen::VectorXd& t) {
  if (t.size() != points.size()) throw ArgumentError("t has the wrong length");
  return factor(points.matrix(), t).log_det;
}

double objective(const BartheProblem& problem, const Eigen::VectorXd& t) {
  return problem.c().dot(t) - log_det_weighted(problem.points(), t);
}

Eigen::VectorXd gradient(const BartheProblem& problem,
                         const Eigen::VectorXd& t) {
  if (t.size() != problem.points().size()) {
    throw ArgumentError("t has the wrong length");
  }
  const Eigen::MatrixXd& a = problem.points().matrix();
  const WeightedGram w = factor(a, t);
  const Eigen::MatrixXd wt = whitened(a, t, w);
  return problem.c() - wt.colwise().squaredNorm().transpose();
}

double cauchy_binet_expand(const PointSet& points, const Eigen::VectorXd& t,
                           unsigned long long budget) {
  const int n = points.dimension();
  const int m = points.size();
  if (t.size() != m) throw ArgumentError("t has the wrong length");
  require_budget(binomial(m, n), budget, "cauchy_binet_expand");
  double total = 0.0;
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    double weight = 0.0;
    for (int j : idx) weight += t(j);
    total += std::exp(weight) * gram_determinant(points.columns(idx));
    return true;
  });
  return total;
}

EffectiveBounds effective_bounds(const PointSet& points, double alpha,
                                 const Tolerances& tol,
                                 unsigned long long budget) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("alpha must lie in (0, 1]");
  }
  EffectiveBounds b;
  b.alpha = alpha;
  b.min_basis_det = smallest_nonzero_basis_determinant(points, tol, budget).value;
  const Eigen::MatrixXd& a = points.matrix();
  b.total_det = (a * a.transpose()).determinant();
  b.value_bound = std::log(1.0 / b.min_basis_det);
  b.norm_bound = std::max(0.0, 2.0 / alpha * b.value_bound);
  b.scale_free_norm_bound =
      std::max(0.0, std::log(b.total_det / b.min_basis_det) / alpha);
  return b;
}

std::string to_string(BartheStatus status) {
  switch (status) {
    case BartheStatus::converged:
      return "converged";
    case BartheStatus::outside_polytope:
      return "outside_polytope";
    case BartheStatus::iteration_cap:
      return "iteration_cap";
  }
  return "unknown";
}

namespace {

struct Evaluation {
  double value = 0.0;
  Eigen::VectorXd grad;
  // Hessian of log det(A e^T A^T): diag(p) - Q o Q. PSD; 1 is in its kernel.
  Eigen::MatrixXd hess;
};

Evaluation evaluate(const BartheProblem& problem, const Eigen::VectorXd& t,
                    bool with_hessian) {
  const Eigen::MatrixXd& a = problem.points().matrix();
  const WeightedGram w = factor(a, t);
  Evaluation e;
  e.value = problem.c().dot(t) - w.log_det;
  const Eigen::MatrixXd wt = whitened(a, t, w);
  const Eigen::VectorXd p = wt.colwise().squaredNorm().transpose();
  e.grad = problem.c() - p;
  if (with_hessian) {
    const Eigen::MatrixXd q = wt.transpose() * wt;
    e.hess = -q.cwiseProduct(q);
    e.hess.diagonal() += p;
  }
  return e;
}

double value_at(const BartheProblem& problem, const Eigen::VectorXd& t) {
  return objective(problem, t);
}

}  // namespace

BartheSolution solve_barthe(const BartheProblem& problem,
                            const std::optional<EffectiveBounds>& bounds,
                            const BartheOptions& options,
                            const Tolerances& tol) {
  const PointSet& pts = problem.points();
  const int m = pts.size();
  BartheSolution sol;
  sol.t = Eigen::VectorXd::Zero(m);

  try {
    sol.pairwise_support = pairwise_support_condition(pts, tol);
  } catch (const BudgetError&) {
    sol.pairwise_support.reset();
  }

  auto declare_outside = [&](const std::string& reason) {
    sol.status = BartheStatus::outside_polytope;
    sol.value = std::numeric_limits<double>::infinity();
    sol.transform.resize(0, 0);
    sol.residual_norm = std::numeric_limits<double>::quiet_NaN();
    sol.outside_reason = reason;
    return sol;
  };

  if (options.membership_precheck && m <= options.precheck_max_points) {
    sol.membership = polytope_membership(
        pts, MembershipQuery{problem.c(), Polytope::basis},
        options.membership_mode, tol);
    if (!sol.membership->inside) return declare_outside("membership");
  }

  double ceiling = std::numeric_limits<double>::infinity();
  if (bounds && options.enforce_box) {
    ceiling = std::max(bounds->norm_bound, bounds->scale_free_norm_bound) +
              options.box_margin;
  }
  const double value_limit =
      bounds ? bounds->value_bound + 1e-9 * std::max(1.0, std::abs(bounds->value_bound))
             : std::numeric_limits<double>::infinity();

  auto project = [ceiling](Eigen::VectorXd t) {
    t.array() -= t.minCoeff();
    return Eigen::VectorXd(t.array().min(ceiling));
  };

  Eigen::VectorXd t = sol.t;
  for (long it = 0; it < options.max_iterations; ++it) {
    sol.iterations = it;
    const Evaluation ev = evaluate(problem, t, true);
    if (ev.value > value_limit) {
      sol.t = t;
      return declare_outside("value_bound");
    }

    // After gauge fixing the box is {max t - min t <= ceiling}. When it is
    // active, coordinates at the ceiling pushing up and coordinates at 0
    // pushing down are held fixed.
    const bool box_active = t.maxCoeff() >= ceiling - 1e-12;
    std::vector<int> free_idx;
    double pinned_push = 0.0;
    for (int j = 0; j < m; ++j) {
      const bool top = box_active && t(j) >= ceiling - 1e-12 && ev.grad(j) > 0.0;
      const bool bottom = box_active && t(j) <= 1e-12 && ev.grad(j) < 0.0;
      if (top) pinned_push = std::max(pinned_push, ev.grad(j));
      if (!top && !bottom) free_idx.push_back(j);
    }
    double free_inf = 0.0;
    for (int j : free_idx) free_inf = std::max(free_inf, std::abs(ev.grad(j)));
    if (free_inf <= options.tolerance) {
      sol.t = t;
      if (pinned_push > options.tolerance) return declare_outside("box");
      sol.status = BartheStatus::converged;
      break;
    }

    const Eigen::Index k = static_cast<Eigen::Index>(free_idx.size());
    Eigen::MatrixXd h(k, k);
    Eigen::VectorXd gf(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      gf(r) = ev.grad(free_idx[static_cast<std::size_t>(r)]);
      for (Eigen::Index c = 0; c < k; ++c) {
        h(r, c) = ev.hess(free_idx[static_cast<std::size_t>(r)],
                          free_idx[static_cast<std::size_t>(c)]);
      }
    }
    const double ridge = 1e-10 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
    h.diagonal().array() += ridge;
    Eigen::VectorXd step_f = h.ldlt().solve(gf);
    if (!step_f.allFinite() || gf.dot(step_f) <= 0.0) step_f = gf;

    auto expand = [&](const Eigen::VectorXd& sf) {
      Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
      for (Eigen::Index r = 0; r < k; ++r) {
        full(free_idx[static_cast<std::size_t>(r)]) = sf(r);
      }
      return full;
    };

    // Backtracking on the projected path. Near the optimum the objective
    // stops resolving progress, so a full step that shrinks the gradient is
    // accepted as well.
    auto search = [&](const Eigen::VectorXd& dir) -> std::optional<Eigen::VectorXd> {
      double s = 1.0;
      for (int halving = 0; halving < 60; ++halving, s *= 0.5) {
        const Eigen::VectorXd cand = project(t + s * dir);
        double f;
        try {
          f = value_at(problem, cand);
        } catch (const EvaluationError&) {
          continue;
        }
        if (f >= ev.value + 1e-4 * ev.grad.dot(cand - t)) return cand;
        if (halving == 0 && f >= ev.value - 1e-12 * std::max(1.0, std::abs(ev.value))) {
          try {
            const Eigen::VectorXd g2 = gradient(problem, cand);
            double inf2 = 0.0;
            for (int j : free_idx) inf2 = std::max(inf2, std::abs(g2(j)));
            if (inf2 < 0.5 * free_inf) return cand;
          } catch (const EvaluationError&) {
          }
        }
      }
      return std::nullopt;
    };

    std::optional<Eigen::VectorXd> next = search(expand(step_f));
    if (!next) next = search(expand(gf));
    if (!next) {
      // No ascent possible at working precision.
      sol.t = t;
      sol.iterations = it + 1;
      break;
    }
    t = *next;
    sol.t = t;
    sol.iterations = it + 1;
  }

  sol.t = t;
  sol.value = value_at(problem, t);
  const Eigen::MatrixXd& a = pts.matrix();
  // M = e^shift M_s, so M^{-1/2} = e^{-shift/2} M_s^{-1/2}.
  const double shift = t.maxCoeff();
  const Eigen::MatrixXd gram =
      a * exp_of(t.array() - shift).asDiagonal() * a.transpose();
  sol.transform = std::exp(-shift / 2.0) * inverse_sqrt_spd(gram);
  sol.residual_norm =
      verify_radial_isotropy(pts, problem.c(), sol.transform).inf_norm;
  return sol;
}

IsotropyResidual verify_radial_isotropy(const PointSet& points,
                                        const Eigen::VectorXd& c,
                                        const Eigen::MatrixXd& r) {
  const int n = points.dimension();
  const int m = points.size();
  if (r.rows() != n || r.cols() != n) throw ArgumentError("R must be n x n");
  if (c.size() != m) throw ArgumentError("c has the wrong length");
  const double rnorm = r.norm();
  IsotropyResidual res;
  res.j = -Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd u = points.matrix().col(i);
    const Eigen::VectorXd v = r * u;
    const double vn = v.norm();
    if (!(vn > 1e-14 * rnorm * u.norm())) {
      throw DegenerateDirectionError("R u_" + std::to_string(i + 1) +
                                     " is numerically zero");
    }
    res.j += c(i) * (v / vn) * (v / vn).transpose();
  }
  res.inf_norm = res.j.cwiseAbs().maxCoeff();
  return res;
}

bool pairwise_support_condition(const PointSet& points, const Tolerances& tol,
                                unsigned long long budget) {
  const int n = points.dimension();
  const int m = points.size();
  require_budget(binomial(m, n - 1), budget, "pairwise_support_condition");
  std::vector<char> covered(static_cast<std::size_t>(m) * m, 0);
  std::vector<int> extends;
  for_each_combination(m, n - 1, [&](const std::vector<int>& s) {
    extends.clear();
    std::vector<int> with = s;
    with.push_back(0);
    for (int i = 0; i < m; ++i) {
      if (std::find(s.begin(), s.end(), i) != s.end()) continue;
      with.back() = i;
      if (numerical_rank(points.columns(with), tol.rank_scale) == n) {
        extends.push_back(i);
      }
    }
    for (int i : extends) {
      for (int j : extends) {
        covered[static_cast<std::size_t>(i) * m + j] = 1;
      }
    }
    return true;
  });
  return std::all_of(covered.begin(), covered.end(),
                     [](char v) { return v != 0; });
}

MidpointGap concavity_midpoint_gap(const PointSet& points,
                                   const Eigen::VectorXd& s,
                                   const Eigen::VectorXd& t,
                                   const Tolerances& tol,
                                   unsigned long long budget) {
  if (s.size() != points.size() || t.size() != points.size()) {
    throw ArgumentError("s and t must have one entry per point");
  }
  MidpointGap out;
  const double fs = log_det_weighted(points, s);
  const double ft = log_det_weighted(points, t);
  const double fmid = log_det_weighted(points, (s + t) / 2.0);
  out.gap = (fs + ft) / 2.0 - fmid;
  const Eigen::VectorXd diff = s - t;
  out.separation = (diff.maxCoeff() - diff.minCoeff()) / 2.0;

  const double d_min = smallest_nonzero_basis_determinant(points, tol, budget).value;
  const Eigen::MatrixXd& a = points.matrix();
  const double total = (a * a.transpose()).determinant();
  const int n = points.dimension();
  out.lemma_bound = out.separation * out.separation *
                    std::exp(-(n + 1) * (s.lpNorm<Eigen::Infinity>() +
                                         t.lpNorm<Eigen::Infinity>())) *
                    d_min * d_min / total;
  out.preconditions_hold = (s.array() >= 0.0).all() &&
                           (t.array() >= 0.0).all() &&
                           pairwise_support_condition(points, tol, budget);
  return out;
}

double dilation_slack(const PointSet& points, const Eigen::VectorXd& c,
                      const Tolerances& tol) {
  const int n = points.dimension();
  const int m = points.size();
  if (c.size() != m) throw ArgumentError("c has the wrong length");
  if (m > kExhaustiveLimit) {
    throw BudgetError("dilation_slack enumerates subsets; at most " +
                      std::to_string(kExhaustiveLimit) + " points");
  }
  const double inf = std::numeric_limits<double>::infinity();
  if (std::abs(c.sum() - n) > tol.membership) return -inf;
  if ((c.array() < -tol.membership).any() ||
      (c.array() > 1.0 + tol.membership).any()) {
    return -inf;
  }
  // Both sides of <u, c> <= C max_{v in K_A} <u, v> are linear on each cone
  // of directions sharing a sort order, so it suffices to check the extreme
  // rays 1_S of those cones. For a ray, max_v <1_S, v> = rank(S).
  const LinearMatroid matroid(points.matrix(), tol.rank_scale);
  double worst = 0.0;
  std::vector<int> subset;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    subset.clear();
    double mass = 0.0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        subset.push_back(i);
        mass += c(i);
      }
    }
    const int r = matroid.rank(subset);
    if (r == 0) {
      if (mass > tol.membership) return -inf;
      continue;
    }
    worst = std::max(worst, mass / r);
  }
  return 1.0 - worst;
}

bool in_dilated_basis_polytope(const PointSet& points, const Eigen::VectorXd& c,
                               double alpha, const Tolerances& tol) {
  return dilation_slack(points, c, tol) >= alpha - 1e-12;
}

}  // namespace rsr
