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

#include "rsr/instance.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "rsr/errors.hpp"
#include "rsr/subsets.hpp"

namespace rsr {

PointSet::PointSet(Eigen::MatrixXd columns, const Tolerances& tol)
    : a_(std::move(columns)) {
  if (a_.rows() < 1) throw ArgumentError("point set needs dimension n >= 1");
  if (a_.cols() < a_.rows()) {
    throw ArgumentError("point set needs m >= n (got n=" +
                        std::to_string(a_.rows()) +
                        ", m=" + std::to_string(a_.cols()) + ")");
  }
  if (!a_.allFinite()) throw ArgumentError("point set has non-finite entries");
  const int r = numerical_rank(a_, tol.rank_scale);
  if (r != a_.rows()) {
    throw ArgumentError("point set must have full row rank " +
                        std::to_string(a_.rows()) + ", numerical rank is " +
                        std::to_string(r));
  }
}

std::string to_string(RecoveryMethod method) {
  switch (method) {
    case RecoveryMethod::randomized:
      return "randomized";
    case RecoveryMethod::randomized_det:
      return "randomized-det";
    case RecoveryMethod::derandomized:
      return "derandomized";
  }
  return "unknown";
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

IndexSet iota_set(int size) {
  IndexSet out(static_cast<std::size_t>(size));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

namespace {

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal(rng);
  return v;
}

Eigen::VectorXd unit_gaussian(std::mt19937_64& rng, Eigen::Index size) {
  Eigen::VectorXd v;
  do {
    v = gaussian_vector(rng, size);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

std::vector<bool> membership_mask(int m, const IndexSet& set) {
  std::vector<bool> mask(static_cast<std::size_t>(m), false);
  for (int i : set) mask[static_cast<std::size_t>(i)] = true;
  return mask;
}

int count_in(const std::vector<int>& subset, const std::vector<bool>& mask) {
  int c = 0;
  for (int i : subset) c += mask[static_cast<std::size_t>(i)] ? 1 : 0;
  return c;
}

}  // namespace

LabeledInstance generate_planted(const PlantedParams& p,
                                 const Tolerances& tol) {
  if (!(1 <= p.d && p.d < p.n && p.n <= p.m)) {
    throw ArgumentError("generate_planted needs 1 <= d < n <= m");
  }
  if (!(p.d < p.inliers && p.inliers <= p.m)) {
    throw ArgumentError("generate_planted needs d < inliers <= m");
  }
  if (!(p.noise_scale >= 0.0 && p.noise_scale < 1.0)) {
    throw ArgumentError("generate_planted needs 0 <= noise_scale < 1");
  }
  // The inliers contribute only d dimensions; the outliers must supply the
  // remaining n - d or the point set cannot have rank n.
  if (p.m - p.inliers < p.n - p.d) {
    throw ArgumentError(
        "degenerate instance: " + std::to_string(p.m - p.inliers) +
        " outliers cannot complete a rank-" + std::to_string(p.n) +
        " point set around a " + std::to_string(p.d) + "-dimensional subspace");
  }

  std::mt19937_64 rng(p.seed);
  const Eigen::MatrixXd raw = [&] {
    Eigen::MatrixXd g(p.n, p.d);
    for (int j = 0; j < p.d; ++j) g.col(j) = gaussian_vector(rng, p.n);
    return g;
  }();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  const Eigen::MatrixXd basis =
      qr.householderQ() * Eigen::MatrixXd::Identity(p.n, p.d);

  IndexSet order = iota_set(p.m);
  for (int i = p.m - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(pick(rng))]);
  }
  IndexSet inliers(order.begin(), order.begin() + p.inliers);
  std::sort(inliers.begin(), inliers.end());
  const std::vector<bool> is_inlier = membership_mask(p.m, inliers);

  std::uniform_real_distribution<double> scale(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd a(p.n, p.m);
  for (int i = 0; i < p.m; ++i) {
    if (is_inlier[static_cast<std::size_t>(i)]) {
      Eigen::VectorXd v = basis * unit_gaussian(rng, p.d);
      v *= scale(rng) / v.norm();
      if (p.noise_scale > 0.0) {
        Eigen::VectorXd off = gaussian_vector(rng, p.n);
        off -= basis * (basis.transpose() * off);
        if (off.norm() > 0.0) {
          off *= unit(rng) * p.noise_scale * v.norm() / off.norm();
          v += off;
        }
      }
      a.col(i) = v;
    } else {
      constexpr int kMaxAttempts = 1000;
      int attempt = 0;
      Eigen::VectorXd v;
      do {
        if (++attempt > kMaxAttempts) {
          throw ArgumentError("could not draw an outlier farther than "
                              "noise_scale from the planted subspace");
        }
        v = unit_gaussian(rng, p.n) * scale(rng);
      } while (distance_to_span(v, basis) <= p.noise_scale * v.norm());
      a.col(i) = v;
    }
  }

  return LabeledInstance{PointSet(std::move(a), tol), p.d, basis,
                         std::move(inliers), p.noise_scale};
}

DependenceWitness DependenceWitness::from_subset(const PointSet& points,
                                                 IndexSet subset,
                                                 const Tolerances& tol) {
  std::sort(subset.begin(), subset.end());
  const Eigen::VectorXd local =
      smallest_right_singular_vector(points.columns(subset));
  DependenceWitness w;
  w.kernel_vector = Eigen::VectorXd::Zero(points.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    w.kernel_vector(subset[k]) = local(static_cast<Eigen::Index>(k));
  }
  const double cut = tol.support * local.cwiseAbs().maxCoeff();
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (std::abs(local(static_cast<Eigen::Index>(k))) > cut) {
      w.support.push_back(subset[k]);
    }
  }
  w.subset = std::move(subset);
  return w;
}

double Condition2Report::mid_gap() const {
  if (det_high_side <= 0.0) return det_low_side / 2.0;
  return std::sqrt(det_low_side * det_high_side);
}

bool check_condition_general(const LabeledInstance& instance,
                             const Tolerances& tol,
                             unsigned long long budget) {
  const PointSet& pts = instance.points;
  const int n = pts.dimension();
  const int m = pts.size();
  require_budget(binomial(m, n), budget, "check_condition_general");
  const std::vector<bool> is_inlier = membership_mask(m, instance.inliers);
  bool holds = true;
  for_each_combination(m, n, [&](const std::vector<int>& v) {
    const bool independent =
        numerical_rank(pts.columns(v), tol.rank_scale) == n;
    const bool few_inliers = count_in(v, is_inlier) <= instance.d;
    if (independent != few_inliers) {
      holds = false;
      return false;
    }
    return true;
  });
  return holds;
}

Condition2Report check_condition_general2(const LabeledInstance& instance,
                                          unsigned long long budget) {
  const PointSet& pts = instance.points;
  const int n = pts.dimension();
  const int m = pts.size();
  unsigned long long total = 0;
  for (int k = 1; k <= n; ++k) {
    const unsigned long long c = binomial(m, k);
    total = (total > ULLONG_MAX - c) ? ULLONG_MAX : total + c;
  }
  require_budget(total, budget, "check_condition_general2");
  const std::vector<bool> is_inlier = membership_mask(m, instance.inliers);

  Condition2Report report;
  report.det_low_side = std::numeric_limits<double>::infinity();
  report.det_high_side = 0.0;
  for (int k = 1; k <= n; ++k) {
    for_each_combination(m, k, [&](const std::vector<int>& v) {
      const double det = gram_determinant(pts.columns(v));
      if (count_in(v, is_inlier) <= instance.d) {
        report.det_low_side = std::min(report.det_low_side, det);
      } else {
        report.det_high_side = std::max(report.det_high_side, det);
      }
      return true;
    });
  }
  report.holds = report.det_high_side < report.det_low_side;
  return report;
}

RecoveryResult recover_from_dependence(const PointSet& points,
                                       const DependenceWitness& witness,
                                       const Tolerances& tol) {
  const int n = points.dimension();
  const int m = points.size();
  if (witness.support.empty()) throw WitnessError("witness support is empty");
  if (static_cast<int>(witness.subset.size()) != n) {
    throw WitnessError("witness subset must have exactly n elements");
  }
  if (witness.kernel_vector.size() != m) {
    throw WitnessError("witness kernel vector must have length m");
  }
  for (int i : witness.subset) {
    if (i < 0 || i >= m) throw WitnessError("witness index out of range");
  }
  if (!std::includes(witness.subset.begin(), witness.subset.end(),
                     witness.support.begin(), witness.support.end())) {
    throw WitnessError("witness support is not contained in its subset");
  }
  const Eigen::VectorXd& u = witness.kernel_vector;
  const double unorm = u.norm();
  if (unorm == 0.0) throw WitnessError("witness kernel vector is zero");
  const IndexSet outside = set_difference(iota_set(m), witness.subset);
  for (int i : outside) {
    if (u(i) != 0.0) {
      throw WitnessError("witness kernel vector is not supported on its subset");
    }
  }

  const Eigen::MatrixXd av = points.columns(witness.subset);
  Eigen::VectorXd uv(n);
  for (int k = 0; k < n; ++k) uv(k) = u(witness.subset[static_cast<std::size_t>(k)]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(av);
  const double residual = (av * uv).norm();
  if (residual > tol.kernel_residual * svd.singularValues()(0) * unorm) {
    throw WitnessError("witness residual |A_V u| = " + std::to_string(residual) +
                       " is inconsistent with a kernel vector");
  }

  const Eigen::MatrixXd basis =
      orthonormal_basis(points.columns(witness.support), tol.rank_scale);
  const int r = static_cast<int>(basis.cols());
  if (r >= n) {
    throw WitnessError("witness support spans the whole space");
  }
  if (r >= static_cast<int>(witness.support.size())) {
    throw WitnessError("witness support columns are linearly independent");
  }

  RecoveryResult result;
  result.subspace_basis = basis;
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd col = points.matrix().col(i);
    if (distance_to_span(col, basis) <= tol.member * col.norm()) {
      result.inliers.push_back(i);
    }
  }
  return result;
}

BasisDeterminant smallest_nonzero_basis_determinant(const PointSet& points,
                                                    const Tolerances& tol,
                                                    unsigned long long budget) {
  const int n = points.dimension();
  const int m = points.size();
  require_budget(binomial(m, n), budget, "smallest_nonzero_basis_determinant");
  BasisDeterminant best;
  best.value = std::numeric_limits<double>::infinity();
  for_each_combination(m, n, [&](const std::vector<int>& idx) {
    const Eigen::MatrixXd ai = points.columns(idx);
    if (numerical_rank(ai, tol.rank_scale) == n) {
      const double det = gram_determinant(ai);
      if (det < best.value) {
        best.value = det;
        best.basis = idx;
      }
    }
    return true;
  });
  if (best.basis.empty()) {
    throw InternalError("no basis found in a full-rank point set");
  }
  return best;
}

}  // namespace rsr
