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

#include "rsr/sse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "rsr/errors.hpp"
#include "rsr/subsets.hpp"

namespace rsr {

RegularGraph::RegularGraph(int vertex_count, int degree, std::vector<Edge> edges)
    : vertex_count_(vertex_count), degree_(degree), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw ArgumentError("graph needs at least one vertex");
  if (degree_ < 1 || degree_ >= vertex_count_) {
    throw ArgumentError("degree must lie in [1, |V| - 1]");
  }
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  std::set<Edge> seen;
  for (auto& [i, j] : edges_) {
    if (i < 0 || j < 0 || i >= vertex_count_ || j >= vertex_count_) {
      throw ArgumentError("edge endpoint out of range");
    }
    if (i == j) throw ArgumentError("self-loop at vertex " + std::to_string(i + 1));
    const Edge key{std::min(i, j), std::max(i, j)};
    if (!seen.insert(key).second) {
      throw ArgumentError("parallel edge " + std::to_string(key.first + 1) + " " +
                          std::to_string(key.second + 1));
    }
    ++deg[static_cast<std::size_t>(i)];
    ++deg[static_cast<std::size_t>(j)];
  }
  for (int v = 0; v < vertex_count_; ++v) {
    if (deg[static_cast<std::size_t>(v)] != degree_) {
      throw ArgumentError("vertex " + std::to_string(v + 1) + " has degree " +
                          std::to_string(deg[static_cast<std::size_t>(v)]) +
                          ", expected " + std::to_string(degree_));
    }
  }
}

RegularGraph cycle_graph(int v) {
  if (v < 3) throw ArgumentError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < v; ++i) e.emplace_back(i, (i + 1) % v);
  return RegularGraph(v, 2, std::move(e));
}

RegularGraph complete_graph(int v) {
  if (v < 2) throw ArgumentError("complete graph needs at least 2 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < v; ++i) {
    for (int j = i + 1; j < v; ++j) e.emplace_back(i, j);
  }
  return RegularGraph(v, v - 1, std::move(e));
}

RegularGraph twin_clique_graph() {
  std::vector<Edge> e;
  for (int base : {0, 4}) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) e.emplace_back(base + i, base + j);
    }
  }
  return RegularGraph(8, 3, std::move(e));
}

namespace {

std::vector<char> membership_mask(const RegularGraph& graph, const IndexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(graph.vertex_count()), 0);
  for (int v : s) {
    if (v < 0 || v >= graph.vertex_count()) {
      throw ArgumentError("vertex index out of range");
    }
    if (in[static_cast<std::size_t>(v)]) throw ArgumentError("repeated vertex");
    in[static_cast<std::size_t>(v)] = 1;
  }
  return in;
}

}  // namespace

ExpansionQuery expansion(const RegularGraph& graph, const IndexSet& s) {
  if (s.empty()) throw ArgumentError("expansion of the empty set is undefined");
  const std::vector<char> in = membership_mask(graph, s);
  ExpansionQuery q;
  q.subset = s;
  std::sort(q.subset.begin(), q.subset.end());
  for (const auto& [i, j] : graph.edges()) {
    const bool a = in[static_cast<std::size_t>(i)];
    const bool b = in[static_cast<std::size_t>(j)];
    if (a && b) ++q.inner_edges;
    if (a != b) ++q.cut_edges;
  }
  q.volume = static_cast<long>(graph.degree()) * static_cast<long>(s.size());
  q.measure = static_cast<double>(s.size()) / graph.vertex_count();
  q.expansion = static_cast<double>(q.cut_edges) / static_cast<double>(q.volume);
  return q;
}

ExpansionProfile expansion_profile(const RegularGraph& graph, double delta,
                                   unsigned long long budget) {
  const double size_real = delta * graph.vertex_count();
  const long size = std::lround(size_real);
  if (std::abs(size_real - static_cast<double>(size)) > 1e-9 || size < 1 ||
      size > graph.vertex_count()) {
    throw ArgumentError("delta * |V| must be a positive integer at most |V|");
  }
  require_budget(binomial(graph.vertex_count(), static_cast<int>(size)), budget,
                 "expansion_profile");
  ExpansionProfile best;
  best.value = 2.0;
  for_each_combination(graph.vertex_count(), static_cast<int>(size),
                       [&](const std::vector<int>& s) {
                         const ExpansionQuery q = expansion(graph, s);
                         if (q.expansion < best.value) {
                           best.value = q.expansion;
                           best.minimizer = q.subset;
                         }
                         return true;
                       });
  return best;
}

ReductionInstance reduce_sse_to_inlier(const RegularGraph& graph,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    double v = 0.0;
    while (v == 0.0) v = unit(rng);
    return v;
  };
  const auto m = static_cast<Eigen::Index>(graph.edges().size());
  ReductionInstance out{graph, Eigen::MatrixXd::Zero(graph.vertex_count(), m),
                        {}, {}};
  for (Eigen::Index e = 0; e < m; ++e) {
    const Edge& edge = graph.edges()[static_cast<std::size_t>(e)];
    const double alpha = draw();
    const double beta = draw();
    out.points(edge.first, e) = alpha;
    out.points(edge.second, e) = beta;
    out.edge_of_point.push_back(edge);
    out.coefficients.emplace_back(alpha, beta);
  }
  return out;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  // False when x and y were already joined.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[static_cast<std::size_t>(x)] = y;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

SpanBounds dim_span_bounds_check(const ReductionInstance& instance,
                                 const IndexSet& edge_subset,
                                 const Tolerances& tol) {
  if (edge_subset.empty()) throw ArgumentError("edge subset must be nonempty");
  const int m = static_cast<int>(instance.edge_of_point.size());
  std::set<int> seen_edges;
  std::set<int> touched;
  UnionFind uf(instance.graph.vertex_count());
  bool acyclic = true;
  for (int e : edge_subset) {
    if (e < 0 || e >= m) throw ArgumentError("edge index out of range");
    if (!seen_edges.insert(e).second) throw ArgumentError("repeated edge index");
    const Edge& edge = instance.edge_of_point[static_cast<std::size_t>(e)];
    touched.insert(edge.first);
    touched.insert(edge.second);
    if (!uf.unite(edge.first, edge.second)) acyclic = false;
  }
  std::set<int> roots;
  for (int v : touched) roots.insert(uf.find(v));

  SpanBounds b;
  const IndexSet cols(seen_edges.begin(), seen_edges.end());
  b.dim = numerical_rank(select_columns(instance.points, cols), tol.rank_scale);
  b.neighborhood_size = static_cast<int>(touched.size());
  b.components = static_cast<int>(roots.size());
  b.acyclic = acyclic;
  b.lower_ok = 2 * b.dim >= b.neighborhood_size;
  b.upper_ok = b.dim <= b.neighborhood_size;
  b.forest_exact = !acyclic || b.dim == b.neighborhood_size - b.components;
  return b;
}

CompletenessReport completeness_check(const ReductionInstance& instance,
                                      const IndexSet& s, double epsilon,
                                      bool check_precondition) {
  const ExpansionQuery q = expansion(instance.graph, s);
  if (check_precondition && q.expansion > epsilon + 1e-12) {
    throw ArgumentError("precondition violated: expansion of S is " +
                        std::to_string(q.expansion) + " > epsilon = " +
                        std::to_string(epsilon));
  }
  const std::vector<char> in = membership_mask(instance.graph, s);
  CompletenessReport r;
  r.subspace_dim = static_cast<int>(s.size());
  const Eigen::Index m = instance.points.cols();
  for (Eigen::Index e = 0; e < m; ++e) {
    bool inside = true;
    for (Eigen::Index v = 0; v < instance.points.rows(); ++v) {
      if (!in[static_cast<std::size_t>(v)] && instance.points(v, e) != 0.0) {
        inside = false;
        break;
      }
    }
    if (inside) r.contained_points.push_back(static_cast<int>(e));
  }
  r.induced_edges = q.inner_edges;
  r.fraction = static_cast<double>(r.induced_edges) / static_cast<double>(m);
  r.passes = r.fraction >= (1.0 - epsilon) * q.measure - 1e-12;
  return r;
}

}  // namespace rsr
