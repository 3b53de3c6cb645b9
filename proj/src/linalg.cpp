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

#include "rsr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsr {

double rank_threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols,
                      double rank_scale) {
  return sigma_max * static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * rank_scale;
}

int numerical_rank(const Eigen::MatrixXd& a, double rank_scale) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  const double cut = rank_threshold(s(0), a.rows(), a.cols(), rank_scale);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& a,
                               std::span<const int> idx) {
  Eigen::MatrixXd out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  }
  return out;
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a,
                                  double rank_scale) {
  if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0.0) {
    const double cut = rank_threshold(s(0), a.rows(), a.cols(), rank_scale);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cut) ++r;
    }
  }
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd best_fit_basis(const Eigen::MatrixXd& a, int k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const int cols = std::min<int>(k, static_cast<int>(svd.matrixU().cols()));
  return svd.matrixU().leftCols(cols);
}

double distance_to_span(const Eigen::VectorXd& v,
                        const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return v.norm();
  const Eigen::VectorXd r = v - basis * (basis.transpose() * v);
  return r.norm();
}

double gram_determinant(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return 1.0;
  // With more columns than rows the trailing singular values are zero.
  if (a.cols() > a.rows()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  double det = 1.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    det *= s * s;
  }
  return det;
}

Eigen::VectorXd smallest_right_singular_vector(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(svd.matrixV().cols() - 1);
}

Eigen::MatrixXd inverse_sqrt_spd(const Eigen::MatrixXd& m,
                                 double floor_ratio) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double floor = floor_ratio * ev.maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    ev(i) = 1.0 / std::sqrt(std::max(ev(i), floor));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace rsr
