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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rsr/errors.hpp"
#include "rsr/instance.hpp"
#include "rsr/linalg.hpp"
#include "rsr/subsets.hpp"

namespace rsr {
namespace {

using testing::all_subsets_of_size;

Eigen::MatrixXd id(int n) { return Eigen::MatrixXd::Identity(n, n); }

LabeledInstance planted(int n, int d, int m, int k, double eta, std::uint64_t seed) {
  return generate_planted(PlantedParams{n, d, m, k, eta, seed});
}

TEST(Linalg, NumericalRankAndThreshold) {
  EXPECT_EQ(numerical_rank(id(3), 100), 3);
  Eigen::MatrixXd c(3, 2);
  c << 1, 2, 0, 0, 0, 0;
  EXPECT_EQ(numerical_rank(c, 100), 1);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd(3, 0), 100), 0);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(2, 2), 100), 0);
  EXPECT_DOUBLE_EQ(rank_threshold(2.0, 3, 5, 100),
                   2.0 * 5 * std::numeric_limits<double>::epsilon() * 100);
}

TEST(Linalg, GramDeterminantMatchesQr) {
  const Eigen::MatrixXd a = testing::random_gaussian(4, 3, 3);
  EXPECT_NEAR(gram_determinant(a), testing::gram_det_qr(a),
              1e-10 * testing::gram_det_qr(a));
  EXPECT_EQ(gram_determinant(Eigen::MatrixXd(4, 0)), 1.0);
  EXPECT_EQ(gram_determinant(testing::random_gaussian(2, 3, 1)), 0.0);
}

TEST(Linalg, InverseSqrtSpd) {
  Eigen::MatrixXd m(2, 2);
  m << 4, 1, 1, 3;
  const Eigen::MatrixXd r = inverse_sqrt_spd(m);
  EXPECT_LT((r * m * r - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-12);
  EXPECT_LT((r - r.transpose()).norm(), 1e-15);
}

TEST(Linalg, DistanceAndBestFit) {
  Eigen::MatrixXd basis(3, 1);
  basis << 1, 0, 0;
  EXPECT_NEAR(distance_to_span(Eigen::Vector3d(3, 4, 0), basis), 4.0, 1e-15);
  Eigen::MatrixXd pts(3, 3);
  pts << 1, 2, -1, 0, 0, 0, 0, 0, 0;
  const Eigen::MatrixXd b = best_fit_basis(pts, 1);
  EXPECT_NEAR(std::abs(b(0, 0)), 1.0, 1e-15);
}

TEST(Subsets, BinomialAndEnumeration) {
  EXPECT_EQ(binomial(6, 3), 20u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  std::vector<std::vector<int>> seen;
  const auto count = for_each_combination(5, 2, [&](const std::vector<int>& s) {
    seen.push_back(s);
    return true;
  });
  EXPECT_EQ(count, 10u);
  EXPECT_EQ(seen, all_subsets_of_size(5, 2));
  EXPECT_THROW(require_budget(11, 10, "x"), BudgetError);
  EXPECT_NO_THROW(require_budget(10, 10, "x"));
}

TEST(PointSet, Invariants) {
  EXPECT_NO_THROW(PointSet(id(3)));
  EXPECT_THROW(PointSet(Eigen::MatrixXd::Ones(3, 2)), ArgumentError);
  EXPECT_THROW(PointSet(Eigen::MatrixXd::Ones(2, 4)), ArgumentError);
  Eigen::MatrixXd bad = id(2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(PointSet{bad}, ArgumentError);
  EXPECT_THROW(PointSet(Eigen::MatrixXd(0, 0)), ArgumentError);
}

TEST(GeneratePlanted, SmallExampleSatisfiesCondition1) {
  const LabeledInstance inst = planted(3, 1, 6, 3, 0.0, 7);
  EXPECT_EQ(inst.points.dimension(), 3);
  EXPECT_EQ(inst.points.size(), 6);
  EXPECT_EQ(inst.inliers.size(), 3u);
  EXPECT_GT(3.0, 1.0 / 3.0 * 6);
  EXPECT_TRUE(check_condition_general(inst));
  EXPECT_TRUE(testing::condition1_by_det(inst.points.matrix(), inst.inliers, 1));
}

TEST(GeneratePlanted, DegenerateRejected) {
  EXPECT_THROW(planted(2, 1, 2, 2, 0.0, 1), ArgumentError);
}

TEST(GeneratePlanted, ParameterDomain) {
  EXPECT_THROW(planted(3, 0, 6, 3, 0, 1), ArgumentError);
  EXPECT_THROW(planted(3, 3, 6, 4, 0, 1), ArgumentError);
  EXPECT_THROW(planted(3, 1, 2, 2, 0, 1), ArgumentError);
  EXPECT_THROW(planted(3, 1, 6, 1, 0, 1), ArgumentError);
  EXPECT_THROW(planted(3, 1, 6, 7, 0, 1), ArgumentError);
  EXPECT_THROW(planted(3, 1, 6, 3, -0.1, 1), ArgumentError);
}

TEST(GeneratePlanted, DeterministicInSeed) {
  const LabeledInstance a = planted(4, 2, 9, 5, 1e-6, 42);
  const LabeledInstance b = planted(4, 2, 9, 5, 1e-6, 42);
  const LabeledInstance c = planted(4, 2, 9, 5, 1e-6, 43);
  EXPECT_EQ(a.points.matrix(), b.points.matrix());
  EXPECT_EQ(a.inliers, b.inliers);
  EXPECT_EQ(a.subspace_basis, b.subspace_basis);
  EXPECT_NE(a.points.matrix(), c.points.matrix());
}

TEST(GeneratePlanted, LabelsMatchGeometry) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double eta = seed % 2 ? 1e-3 : 0.0;
    const LabeledInstance inst = planted(5, 2, 12, 6, eta, seed);
    const Eigen::MatrixXd& b = inst.subspace_basis;
    EXPECT_LT((b.transpose() * b - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-12);
    for (int i = 0; i < 12; ++i) {
      const Eigen::VectorXd u = inst.points.matrix().col(i);
      const double rel = distance_to_span(u, b) / u.norm();
      const bool in = std::binary_search(inst.inliers.begin(), inst.inliers.end(), i);
      if (in) {
        EXPECT_LE(rel, eta + 1e-12);
      } else {
        EXPECT_GT(rel, eta);
      }
      EXPECT_GE(u.norm(), 0.5 - 1e-12);
      EXPECT_LE(u.norm(), 2.0 * (1.0 + eta) + 1e-12);
    }
  }
}

TEST(ConditionGeneral, IdentityCase) {
  LabeledInstance inst{PointSet(id(3)), 1, Eigen::MatrixXd(id(3).col(0)), {0}, 0.0};
  EXPECT_TRUE(check_condition_general(inst));
}

TEST(ConditionGeneral, MislabeledCopyFails) {
  LabeledInstance inst = planted(3, 1, 6, 3, 0.0, 7);
  const IndexSet outliers = set_difference(iota_set(6), inst.inliers);
  Eigen::MatrixXd a = inst.points.matrix();
  a.col(outliers[0]) = 1.5 * a.col(inst.inliers[0]);
  LabeledInstance bad{PointSet(a), 1, inst.subspace_basis, inst.inliers, 0.0};
  EXPECT_FALSE(check_condition_general(bad));
  EXPECT_FALSE(testing::condition1_by_det(a, inst.inliers, 1));
}

TEST(ConditionGeneral, BudgetEnforced) {
  const LabeledInstance inst = planted(3, 1, 6, 3, 0.0, 7);
  EXPECT_THROW(check_condition_general(inst, {}, 19), BudgetError);
}

TEST(ConditionGeneral, AgreesWithDeterminantOracle) {
  std::mt19937_64 rng(5);
  int disagreements = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto pick = [&](int lo, int hi) {
      return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    const int n = pick(2, 5);
    const int d = pick(1, n - 1);
    const int m = pick(n + 2, 10);
    const int k = pick(d + 1, m - n + d);
    LabeledInstance inst = planted(n, d, m, k, 0.0, rng());
    // Some trials break Condition 1 on purpose.
    if (trial % 3 == 0) {
      const IndexSet out = set_difference(iota_set(inst.points.size()), inst.inliers);
      if (out.size() > static_cast<std::size_t>(n - d)) {
        Eigen::MatrixXd a = inst.points.matrix();
        a.col(out[0]) = a.col(inst.inliers[0]) - 0.5 * a.col(inst.inliers[1]);
        inst = LabeledInstance{PointSet(a), inst.d, inst.subspace_basis, inst.inliers, 0.0};
      }
    }
    const bool lib = check_condition_general(inst);
    const bool ora = testing::condition1_by_det(inst.points.matrix(), inst.inliers, inst.d);
    if (lib != ora) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(ConditionGeneral2, CleanInstanceHasZeroHighSide) {
  const LabeledInstance inst = planted(4, 2, 8, 4, 0.0, 3);
  const Condition2Report r = check_condition_general2(inst);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.det_high_side, 1e-20);
  EXPECT_GT(r.det_low_side, 1e-6);
  EXPECT_GT(r.mid_gap(), r.det_high_side);
  EXPECT_LT(r.mid_gap(), r.det_low_side);
}

TEST(ConditionGeneral2, SmallNoiseHasPositiveGap) {
  const LabeledInstance inst = planted(5, 2, 10, 5, 1e-8, 1);
  const Condition2Report r = check_condition_general2(inst);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.det_high_side, 0.0);
  EXPECT_LT(r.det_high_side, r.det_low_side);

  // Oracle: recompute both sides with QR Gram determinants.
  double low = std::numeric_limits<double>::infinity();
  double high = 0.0;
  for (int k = 1; k <= 5; ++k) {
    for (const auto& v : all_subsets_of_size(10, k)) {
      int in = 0;
      for (int i : v) in += std::binary_search(inst.inliers.begin(), inst.inliers.end(), i);
      const double g = testing::gram_det_qr(inst.points.columns(v));
      if (in <= 2) low = std::min(low, g);
      else high = std::max(high, g);
    }
  }
  EXPECT_NEAR(r.det_low_side, low, 1e-9 * low);
  EXPECT_NEAR(r.det_high_side, high, 1e-6 * high + 1e-30);
}

TEST(ConditionGeneral2, LargeNoiseBreaksGap) {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 10 && !found; ++seed) {
    const LabeledInstance inst = planted(5, 2, 10, 5, 0.5, seed);
    found = !check_condition_general2(inst).holds;
  }
  EXPECT_TRUE(found);
}

TEST(RecoverFromDependence, CollinearHandExample) {
  Eigen::MatrixXd a(3, 5);
  a << 1, 2, 3, 0, 0,
       0, 0, 0, 1, 0,
       0, 0, 0, 0, 1;
  const PointSet pts(a);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(5);
  u(0) = 2.0;
  u(1) = -1.0;
  const DependenceWitness w{{0, 1, 3}, u, {0, 1}};
  const RecoveryResult r = recover_from_dependence(pts, w);
  EXPECT_EQ(r.inliers, (IndexSet{0, 1, 2}));
  ASSERT_EQ(r.subspace_basis.cols(), 1);
  EXPECT_NEAR(std::abs(r.subspace_basis(0, 0)), 1.0, 1e-14);
}

TEST(RecoverFromDependence, FromSubsetFindsSupport) {
  Eigen::MatrixXd a(3, 5);
  a << 1, 2, 3, 0, 0,
       0, 0, 0, 1, 0,
       0, 0, 0, 0, 1;
  const PointSet pts(a);
  const DependenceWitness w = DependenceWitness::from_subset(pts, {0, 1, 3});
  EXPECT_EQ(w.support, (IndexSet{0, 1}));
  EXPECT_LT((a * w.kernel_vector).norm(), 1e-12);
}

TEST(RecoverFromDependence, RejectsBadWitnesses) {
  const LabeledInstance inst = planted(3, 1, 6, 3, 0.0, 7);
  const PointSet& pts = inst.points;
  const IndexSet out = set_difference(iota_set(6), inst.inliers);
  // Support covering V with generic outliers: spans R^3.
  IndexSet v{inst.inliers[0], out[0], out[1]};
  std::sort(v.begin(), v.end());
  Eigen::VectorXd u = Eigen::VectorXd::Zero(6);
  for (int i : v) u(i) = 1.0;
  EXPECT_THROW(recover_from_dependence(pts, DependenceWitness{v, u, v}), WitnessError);
  // Empty support.
  EXPECT_THROW(recover_from_dependence(pts, DependenceWitness{v, Eigen::VectorXd::Zero(6), {}}),
               WitnessError);
  // Wrong subset size.
  EXPECT_THROW(recover_from_dependence(pts, DependenceWitness{{v[0], v[1]}, u, {v[0]}}),
               WitnessError);
}

TEST(RecoverFromDependence, EveryWitnessGivesPlantedSet) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const LabeledInstance inst = planted(4, 2, 9, 5, 0.0, seed);
    ASSERT_TRUE(check_condition_general(inst));
    int witnesses = 0;
    for (const auto& v : all_subsets_of_size(9, 4)) {
      if (numerical_rank(inst.points.columns(v), 100) == 4) continue;
      const DependenceWitness w = DependenceWitness::from_subset(inst.points, v);
      EXPECT_EQ(recover_from_dependence(inst.points, w).inliers, inst.inliers);
      ++witnesses;
    }
    EXPECT_GT(witnesses, 0);
  }
}

TEST(SmallestBasisDeterminant, HandExamples) {
  const BasisDeterminant idd = smallest_nonzero_basis_determinant(PointSet(id(3)));
  EXPECT_NEAR(idd.value, 1.0, 1e-14);
  EXPECT_EQ(idd.basis, (IndexSet{0, 1, 2}));

  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 1, 0, 1, 1;
  EXPECT_NEAR(smallest_nonzero_basis_determinant(PointSet(a)).value, 1.0, 1e-14);

  Eigen::MatrixXd b(2, 3);
  b << 1, 0, 0.1, 0, 1, 0;
  const BasisDeterminant bd = smallest_nonzero_basis_determinant(PointSet(b));
  EXPECT_NEAR(bd.value, 0.01, 1e-15);
  EXPECT_EQ(bd.basis, (IndexSet{1, 2}));
}

TEST(SmallestBasisDeterminant, IsMinimumOverNonzeroBases) {
  const LabeledInstance inst = planted(3, 1, 7, 3, 0.0, 11);
  const BasisDeterminant bd = smallest_nonzero_basis_determinant(inst.points);
  EXPECT_GT(bd.value, 0.0);
  for (const auto& v : all_subsets_of_size(7, 3)) {
    const Eigen::MatrixXd av = inst.points.columns(v);
    if (!testing::det_independent(av)) continue;
    EXPECT_LE(bd.value, (av * av.transpose()).determinant() * (1 + 1e-12));
  }
  EXPECT_THROW(smallest_nonzero_basis_determinant(inst.points, {}, 10), BudgetError);
}

TEST(SetHelpers, Basics) {
  EXPECT_EQ(set_intersection({1, 3, 5}, {3, 4, 5}), (IndexSet{3, 5}));
  EXPECT_EQ(set_difference({1, 3, 5}, {3}), (IndexSet{1, 5}));
  EXPECT_EQ(iota_set(3), (IndexSet{0, 1, 2}));
}

}  // namespace
}  // namespace rsr
