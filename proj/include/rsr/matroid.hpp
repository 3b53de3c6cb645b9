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

#ifndef RSR_MATROID_HPP_
#define RSR_MATROID_HPP_

#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "rsr/instance.hpp"

namespace rsr {

// Linear matroid on the columns of a matrix. rank() is memoized per subset
// and safe to call from several threads.
class LinearMatroid {
 public:
  explicit LinearMatroid(Eigen::MatrixXd columns,
                         double rank_scale = Tolerances{}.rank_scale);
  LinearMatroid(const LinearMatroid&) = delete;
  LinearMatroid& operator=(const LinearMatroid&) = delete;

  int ground_size() const { return static_cast<int>(a_.cols()); }
  int dimension() const { return static_cast<int>(a_.rows()); }
  int full_rank() const { return full_rank_; }
  const Eigen::MatrixXd& columns() const { return a_; }

  // Numerical rank of the columns in `subset` (any order); rank({}) = 0.
  int rank(std::span<const int> subset) const;

  // rank of every prefix of `order`: out[k] = rank(order[0..k]).
  std::vector<int> prefix_ranks(std::span<const int> order) const;

  std::size_t cached_ranks() const;

 private:
  using Key = std::vector<std::uint64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Key key_of(std::span<const int> subset) const;

  Eigen::MatrixXd a_;
  double rank_scale_;
  int full_rank_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, int, KeyHash> cache_;
};

int column_rank(const PointSet& points, std::span<const int> subset,
                const Tolerances& tol = {});

// A set function on {0, ..., ground_size - 1} with value 0 on the empty set.
struct SubmodularOracle {
  int ground_size = 0;
  std::function<double(std::span<const int>)> eval;
  // Optional fast path: values on every prefix of an ordering.
  std::function<std::vector<double>(std::span<const int>)> prefix_eval;

  std::vector<double> prefixes(std::span<const int> order) const;
};

// U -> rank(U) - sum_{i in U} x_i.
SubmodularOracle edmonds_oracle(const LinearMatroid& matroid,
                                const Eigen::VectorXd& x);

enum class SfmMode { exhaustive, minnorm };

inline constexpr int kExhaustiveLimit = 22;

struct MinNormOptions {
  // Stop once the best set found is within this of the certified bound.
  double gap_tolerance = 1e-9;
  // Wolfe optimality test |x|^2 - <x,q> <= wolfe_tolerance * max(1, |q|^2).
  double wolfe_tolerance = 1e-12;
  // 0 selects 10 m^2.
  long max_major_cycles = 0;
};

struct SfmResult {
  IndexSet minimizer;
  double value = 0.0;
  // Certified: every set has value >= lower_bound.
  double lower_bound = 0.0;
  long major_cycles = 0;
  // |x|^2 at the start of every major cycle of the min-norm method.
  std::vector<double> norm_trace;
};

SfmResult submodular_minimize(const SubmodularOracle& oracle, SfmMode mode,
                              const MinNormOptions& options = {});

enum class Polytope { independent_set, basis };

struct MembershipQuery {
  Eigen::VectorXd x;
  Polytope polytope = Polytope::basis;
};

enum class CertificateKind {
  none,
  // rank(U) - x(U) == min_value < 0.
  edmonds,
  // x_i < 0 for the single certificate index; min_value = x_i.
  negative_coordinate,
  // sum x < n on the basis polytope; min_value = sum x - n.
  sum_deficit,
};

std::string to_string(CertificateKind kind);

struct MembershipAnswer {
  bool inside = false;
  double min_value = 0.0;
  IndexSet certificate;
  CertificateKind kind = CertificateKind::none;
};

enum class MembershipMode {
  exhaustive,
  minnorm,
  // min-norm, retried exhaustively on convergence failure when small enough.
  automatic,
};

MembershipAnswer polytope_membership(const LinearMatroid& matroid,
                                     const MembershipQuery& query,
                                     MembershipMode mode = MembershipMode::automatic,
                                     const Tolerances& tol = {});

MembershipAnswer polytope_membership(const PointSet& points,
                                     const MembershipQuery& query,
                                     MembershipMode mode = MembershipMode::automatic,
                                     const Tolerances& tol = {});

// Membership from the closed-form description valid under Condition 1:
// 0 <= x <= 1, sum x (= or <=) n, and sum over the inliers <= d.
MembershipAnswer closed_form_membership(const LabeledInstance& instance,
                                        const Eigen::VectorXd& x,
                                        Polytope polytope = Polytope::basis,
                                        const Tolerances& tol = {});

}  // namespace rsr

#endif  // RSR_MATROID_HPP_
