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

#include "rsr/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "rsr/errors.hpp"

namespace rsr {

LinearMatroid::LinearMatroid(Eigen::MatrixXd columns, double rank_scale)
    : a_(std::move(columns)),
      rank_scale_(rank_scale),
      full_rank_(numerical_rank(a_, rank_scale)) {}

std::size_t LinearMatroid::KeyHash::operator()(const Key& k) const {
  std::size_t h = 1469598103934665603ULL;
  for (std::uint64_t w : k) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

LinearMatroid::Key LinearMatroid::key_of(std::span<const int> subset) const {
  Key key(static_cast<std::size_t>((a_.cols() + 63) / 64), 0);
  for (int i : subset) {
    key[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  }
  return key;
}

int LinearMatroid::rank(std::span<const int> subset) const {
  if (subset.empty()) return 0;
  Key key = key_of(subset);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const int r = numerical_rank(select_columns(a_, subset), rank_scale_);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(std::move(key), r);
  return r;
}

std::vector<int> LinearMatroid::prefix_ranks(std::span<const int> order) const {
  std::vector<int> out(order.size());
  int r = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    // Rank is monotone and bounded by the full rank.
    if (r < full_rank_) r = rank(order.subspan(0, k + 1));
    out[k] = r;
  }
  return out;
}

std::size_t LinearMatroid::cached_ranks() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

int column_rank(const PointSet& points, std::span<const int> subset,
                const Tolerances& tol) {
  if (subset.empty()) return 0;
  return numerical_rank(points.columns(subset), tol.rank_scale);
}

std::vector<double> SubmodularOracle::prefixes(
    std::span<const int> order) const {
  if (prefix_eval) return prefix_eval(order);
  std::vector<double> out(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out[k] = eval(order.subspan(0, k + 1));
  }
  return out;
}

SubmodularOracle edmonds_oracle(const LinearMatroid& matroid,
                                const Eigen::VectorXd& x) {
  SubmodularOracle f;
  f.ground_size = matroid.ground_size();
  f.eval = [&matroid, x](std::span<const int> u) {
    double s = 0.0;
    for (int i : u) s += x(i);
    return static_cast<double>(matroid.rank(u)) - s;
  };
  f.prefix_eval = [&matroid, x](std::span<const int> order) {
    const std::vector<int> ranks = matroid.prefix_ranks(order);
    std::vector<double> out(order.size());
    double s = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      s += x(order[k]);
      out[k] = static_cast<double>(ranks[k]) - s;
    }
    return out;
  };
  return f;
}

namespace {

SfmResult minimize_exhaustive(const SubmodularOracle& f) {
  const int m = f.ground_size;
  if (m > kExhaustiveLimit) {
    throw BudgetError("exhaustive submodular minimization is limited to " +
                      std::to_string(kExhaustiveLimit) + " elements, got " +
                      std::to_string(m));
  }
  SfmResult best;
  best.value = 0.0;
  std::vector<int> subset;
  subset.reserve(static_cast<std::size_t>(m));
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    subset.clear();
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1U) subset.push_back(i);
    }
    const double v = f.eval(subset);
    if (v < best.value - 1e-12) {
      best.value = v;
      best.minimizer = subset;
    }
  }
  best.lower_bound = best.value;
  return best;
}

// Linear optimization over the base polytope: the vertex minimizing <w, q>,
// built greedily along the ordering of increasing w. Also reports the
// function value on each prefix of that ordering.
struct GreedyVertex {
  Eigen::VectorXd q;
  std::vector<int> order;
  std::vector<double> prefix_values;
};

GreedyVertex greedy_vertex(const SubmodularOracle& f, const Eigen::VectorXd& w) {
  GreedyVertex g;
  g.order.resize(static_cast<std::size_t>(f.ground_size));
  std::iota(g.order.begin(), g.order.end(), 0);
  std::stable_sort(g.order.begin(), g.order.end(),
                   [&w](int a, int b) { return w(a) < w(b); });
  g.prefix_values = f.prefixes(g.order);
  g.q.resize(f.ground_size);
  double prev = 0.0;
  for (std::size_t k = 0; k < g.order.size(); ++k) {
    g.q(g.order[k]) = g.prefix_values[k] - prev;
    prev = g.prefix_values[k];
  }
  return g;
}

// Minimum-norm point of the affine hull of the columns of `pts`, as affine
// coefficients.
Eigen::VectorXd affine_minimizer(const Eigen::MatrixXd& pts) {
  const Eigen::Index k = pts.cols();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = pts.transpose() * pts;
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  const Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
  return sol.head(k);
}

SfmResult minimize_min_norm(const SubmodularOracle& f,
                            const MinNormOptions& opt) {
  const int m = f.ground_size;
  SfmResult res;
  if (m == 0) return res;
  const long cap = opt.max_major_cycles > 0
                       ? opt.max_major_cycles
                       : 10L * static_cast<long>(m) * static_cast<long>(m);

  IndexSet best_set;
  double best_value = 0.0;
  auto consider_prefixes = [&](const GreedyVertex& g) {
    for (std::size_t k = 0; k < g.prefix_values.size(); ++k) {
      if (g.prefix_values[k] < best_value - 1e-12) {
        best_value = g.prefix_values[k];
        best_set.assign(g.order.begin(),
                        g.order.begin() + static_cast<std::ptrdiff_t>(k + 1));
      }
    }
  };

  GreedyVertex g = greedy_vertex(f, Eigen::VectorXd::Zero(m));
  consider_prefixes(g);
  Eigen::MatrixXd pts = g.q;
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = g.q;
  double lower = -std::numeric_limits<double>::infinity();

  auto finish = [&](long cycles) {
    std::sort(best_set.begin(), best_set.end());
    res.minimizer = best_set;
    res.value = best_value;
    res.lower_bound = std::min(lower, best_value);
    res.major_cycles = cycles;
    return res;
  };

  for (long cycle = 1; cycle <= cap; ++cycle) {
    res.norm_trace.push_back(x.squaredNorm());
    // Any x in the base polytope certifies f(U) >= x(U) >= sum_i min(x_i, 0).
    lower = std::max(lower, x.cwiseMin(0.0).sum());
    g = greedy_vertex(f, x);
    consider_prefixes(g);
    if (best_value - lower <= opt.gap_tolerance) return finish(cycle);
    const double xx = x.squaredNorm();
    if (xx - x.dot(g.q) <= opt.wolfe_tolerance * std::max(1.0, g.q.squaredNorm())) {
      return finish(cycle);
    }
    bool duplicate = false;
    for (Eigen::Index c = 0; c < pts.cols(); ++c) {
      if ((pts.col(c) - g.q).lpNorm<Eigen::Infinity>() <= 1e-14) duplicate = true;
    }
    if (duplicate) return finish(cycle);

    pts.conservativeResize(Eigen::NoChange, pts.cols() + 1);
    pts.col(pts.cols() - 1) = g.q;
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    // Minor cycles: move toward the affine minimizer while staying in the
    // convex hull, dropping vertices whose weight reaches zero.
    for (Eigen::Index guard = 0; guard <= pts.cols() + 1; ++guard) {
      const Eigen::VectorXd mu = affine_minimizer(pts);
      if ((mu.array() > 1e-15).all()) {
        lambda = mu;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (mu(i) <= 1e-15) {
          const double denom = lambda(i) - mu(i);
          if (denom > 0.0) theta = std::min(theta, lambda(i) / denom);
        }
      }
      lambda = (1.0 - theta) * lambda + theta * mu;
      Eigen::Index keep = 0;
      for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 1e-15) {
          pts.col(keep) = pts.col(i);
          lambda(keep) = lambda(i);
          ++keep;
        }
      }
      if (keep == 0) {
        // Numerical breakdown; restart from the newest vertex.
        pts.col(0) = g.q;
        lambda = Eigen::VectorXd::Ones(1);
        keep = 1;
      }
      pts.conservativeResize(Eigen::NoChange, keep);
      lambda.conservativeResize(keep);
      lambda /= lambda.sum();
    }
    x = pts * lambda;
  }
  throw ConvergenceError("minimum-norm-point iteration cap of " +
                             std::to_string(cap) + " major cycles exceeded",
                         best_set, best_value, lower);
}

}  // namespace

SfmResult submodular_minimize(const SubmodularOracle& oracle, SfmMode mode,
                              const MinNormOptions& options) {
  if (!oracle.eval) throw ArgumentError("submodular oracle has no evaluator");
  switch (mode) {
    case SfmMode::exhaustive:
      return minimize_exhaustive(oracle);
    case SfmMode::minnorm:
      return minimize_min_norm(oracle, options);
  }
  throw ArgumentError("unknown submodular minimization mode");
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::none:
      return "none";
    case CertificateKind::edmonds:
      return "edmonds";
    case CertificateKind::negative_coordinate:
      return "negative_coordinate";
    case CertificateKind::sum_deficit:
      return "sum_deficit";
  }
  return "unknown";
}

namespace {

MembershipAnswer outside(double value, IndexSet cert, CertificateKind kind) {
  return MembershipAnswer{false, value, std::move(cert), kind};
}

// Checks that need no minimization: sign and box constraints, and the
// coordinate sum for the basis polytope. Returns an answer when one of them
// already decides the query.
std::optional<MembershipAnswer> trivial_checks(const Eigen::VectorXd& x,
                                               Polytope polytope, int n,
                                               int full_rank,
                                               const std::function<int(int)>& singleton_rank,
                                               double tol) {
  const int m = static_cast<int>(x.size());
  for (int i = 0; i < m; ++i) {
    if (x(i) < -tol) {
      return outside(x(i), IndexSet{i}, CertificateKind::negative_coordinate);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (x(i) > 1.0 + tol) {
      return outside(singleton_rank(i) - x(i), IndexSet{i},
                     CertificateKind::edmonds);
    }
  }
  if (polytope == Polytope::basis) {
    const double s = x.sum();
    if (s > n + tol) {
      return outside(full_rank - s, iota_set(m), CertificateKind::edmonds);
    }
    if (s < n - tol) {
      return outside(s - n, iota_set(m), CertificateKind::sum_deficit);
    }
  }
  return std::nullopt;
}

}  // namespace

MembershipAnswer polytope_membership(const LinearMatroid& matroid,
                                     const MembershipQuery& query,
                                     MembershipMode mode,
                                     const Tolerances& tol) {
  const int m = matroid.ground_size();
  if (query.x.size() != m) {
    throw ArgumentError("membership query has " +
                        std::to_string(query.x.size()) + " coordinates for " +
                        std::to_string(m) + " points");
  }
  auto singleton = [&matroid](int i) { return matroid.rank(std::span<const int>(&i, 1)); };
  if (auto early = trivial_checks(query.x, query.polytope, matroid.dimension(),
                                  matroid.full_rank(), singleton,
                                  tol.membership)) {
    return *early;
  }

  const SubmodularOracle f = edmonds_oracle(matroid, query.x);
  SfmResult sfm;
  switch (mode) {
    case MembershipMode::exhaustive:
      sfm = submodular_minimize(f, SfmMode::exhaustive);
      break;
    case MembershipMode::minnorm:
      sfm = submodular_minimize(f, SfmMode::minnorm);
      break;
    case MembershipMode::automatic:
      try {
        sfm = submodular_minimize(f, SfmMode::minnorm);
      } catch (const ConvergenceError&) {
        if (m > kExhaustiveLimit) throw;
        sfm = submodular_minimize(f, SfmMode::exhaustive);
      }
      break;
  }
  MembershipAnswer ans;
  ans.min_value = sfm.value;
  ans.inside = sfm.value >= -tol.membership;
  if (!ans.inside) {
    ans.certificate = std::move(sfm.minimizer);
    ans.kind = CertificateKind::edmonds;
  }
  return ans;
}

MembershipAnswer polytope_membership(const PointSet& points,
                                     const MembershipQuery& query,
                                     MembershipMode mode,
                                     const Tolerances& tol) {
  const LinearMatroid matroid(points.matrix(), tol.rank_scale);
  return polytope_membership(matroid, query, mode, tol);
}

MembershipAnswer closed_form_membership(const LabeledInstance& instance,
                                        const Eigen::VectorXd& x,
                                        Polytope polytope,
                                        const Tolerances& tol) {
  const PointSet& pts = instance.points;
  const int m = pts.size();
  const int n = pts.dimension();
  if (x.size() != m) {
    throw ArgumentError("membership query length does not match the points");
  }
  // Under Condition 1 every single column is nonzero and the full set spans.
  auto singleton = [](int) { return 1; };
  if (auto early = trivial_checks(x, polytope, n, n, singleton, tol.membership)) {
    return *early;
  }
  if (polytope == Polytope::independent_set && x.sum() > n + tol.membership) {
    return outside(n - x.sum(), iota_set(m), CertificateKind::edmonds);
  }
  double inlier_mass = 0.0;
  for (int i : instance.inliers) inlier_mass += x(i);
  const int inlier_rank =
      std::min<int>(instance.d, static_cast<int>(instance.inliers.size()));
  if (inlier_mass > inlier_rank + tol.membership) {
    return outside(inlier_rank - inlier_mass, instance.inliers,
                   CertificateKind::edmonds);
  }
  return MembershipAnswer{true, 0.0, {}, CertificateKind::none};
}

}  // namespace rsr
