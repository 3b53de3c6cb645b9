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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rsr::testing {

namespace {

Eigen::MatrixXd cols_of(const Eigen::MatrixXd& a, const std::vector<int>& idx) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  }
  return out;
}

void subsets_rec(int start, int m, int k, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    subsets_rec(i + 1, m, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> all_subsets_of_size(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets_rec(0, m, k, cur, out);
  return out;
}

bool det_independent(const Eigen::MatrixXd& square, double rel) {
  double scale = 1.0;
  for (Eigen::Index j = 0; j < square.cols(); ++j) scale *= square.col(j).norm();
  return std::abs(square.determinant()) > rel * scale;
}

int lu_rank(const Eigen::MatrixXd& a, double rel) {
  if (a.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(rel);
  return static_cast<int>(lu.rank());
}

bool condition1_by_det(const Eigen::MatrixXd& a, const std::vector<int>& inliers,
                       int d) {
  const int n = static_cast<int>(a.rows());
  for (const auto& v : all_subsets_of_size(static_cast<int>(a.cols()), n)) {
    int k = 0;
    for (int i : v) k += std::count(inliers.begin(), inliers.end(), i) > 0 ? 1 : 0;
    if (det_independent(cols_of(a, v)) != (k <= d)) return false;
  }
  return true;
}

std::optional<std::vector<int>> kernel_enumeration_inliers(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  std::optional<std::vector<int>> agreed;
  for (const auto& v : all_subsets_of_size(m, n)) {
    const Eigen::MatrixXd av = cols_of(a, v);
    if (det_independent(av)) continue;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(av);
    lu.setThreshold(1e-9);
    const Eigen::MatrixXd ker = lu.kernel();
    if (ker.cols() == 0) continue;
    const Eigen::VectorXd u = ker.col(0);
    std::vector<int> support;
    for (int k = 0; k < n; ++k) {
      if (std::abs(u(k)) > 1e-8 * u.cwiseAbs().maxCoeff()) support.push_back(v[static_cast<std::size_t>(k)]);
    }
    const Eigen::MatrixXd s = cols_of(a, support);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s);
    qr.setThreshold(1e-9);
    const Eigen::MatrixXd q =
        Eigen::MatrixXd(qr.householderQ()).leftCols(qr.rank());
    std::vector<int> members;
    for (int i = 0; i < m; ++i) {
      const Eigen::VectorXd ui = a.col(i);
      const double dist = (ui - q * (q.transpose() * ui)).norm();
      if (dist <= 1e-7 * ui.norm()) members.push_back(i);
    }
    if (agreed && *agreed != members) return std::nullopt;
    agreed = members;
  }
  return agreed;
}

double brute_force_edmonds(const Eigen::MatrixXd& a, const Eigen::VectorXd& x) {
  const int m = static_cast<int>(a.cols());
  double best = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> u;
    double mass = 0.0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        u.push_back(i);
        mass += x(i);
      }
    }
    best = std::min(best, lu_rank(cols_of(a, u)) - mass);
  }
  return best;
}

double gram_det_qr(const Eigen::MatrixXd& b) {
  if (b.cols() == 0) return 1.0;
  if (b.cols() > b.rows()) return 0.0;
  const Eigen::MatrixXd r = b.householderQr().matrixQR().triangularView<Eigen::Upper>();
  double det = 1.0;
  for (Eigen::Index i = 0; i < b.cols(); ++i) det *= r(i, i) * r(i, i);
  return det;
}

bool lp_hull_membership(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                        bool basis_only, double tol) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  if ((x.array() < -tol).any()) return false;

  std::vector<std::vector<int>> vertices;
  for (int k = basis_only ? n : 0; k <= n; ++k) {
    for (const auto& s : all_subsets_of_size(m, k)) {
      if (lu_rank(cols_of(a, s)) == k) vertices.push_back(s);
    }
  }
  // Phase 1 for  sum_v lambda_v 1_v = x, sum_v lambda_v = 1, lambda >= 0,
  // with one artificial per row. Dense tableau, Bland's rule.
  const int rows = m + 1;
  const int nv = static_cast<int>(vertices.size());
  const int cols = nv + rows;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  for (int v = 0; v < nv; ++v) {
    for (int i : vertices[static_cast<std::size_t>(v)]) t(i, v) = 1.0;
    t(m, v) = 1.0;
  }
  for (int r = 0; r < rows; ++r) {
    t(r, nv + r) = 1.0;
    t(r, cols) = r < m ? std::max(0.0, x(r)) : 1.0;
  }
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) basis[static_cast<std::size_t>(r)] = nv + r;
  // Objective row: minimize the artificial sum, expressed in reduced costs.
  for (int c = 0; c <= cols; ++c) {
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += t(r, c);
    t(rows, c) = c >= nv && c < cols ? 0.0 : -s;
  }
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int c = 0; c < cols; ++c) {
      if (t(rows, c) < -1e-12) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows; ++r) {
      if (t(r, enter) > 1e-12) {
        const double ratio = t(r, cols) / t(r, enter);
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
             basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) break;
    t.row(leave) /= t(leave, enter);
    for (int r = 0; r <= rows; ++r) {
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  const double infeasibility = -t(rows, cols);
  double violation = 0.0;
  for (int r = 0; r < m; ++r) violation += std::max(0.0, -x(r));
  return infeasibility + violation <= tol;
}

Eigen::MatrixXd random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = g(rng);
  }
  return a;
}

}  // namespace rsr::testing
