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

#ifndef RSR_SSE_HPP_
#define RSR_SSE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rsr/linalg.hpp"

namespace rsr {

using Edge = std::pair<int, int>;

// Simple Delta-regular graph on vertices 0..vertex_count-1.
class RegularGraph {
 public:
  RegularGraph(int vertex_count, int degree, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int degree() const { return degree_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  int vertex_count_;
  int degree_;
  std::vector<Edge> edges_;
};

RegularGraph cycle_graph(int v);
RegularGraph complete_graph(int v);
// Two disjoint copies of K_4, 3-regular on 8 vertices.
RegularGraph twin_clique_graph();

struct ExpansionQuery {
  IndexSet subset;
  long cut_edges = 0;
  long inner_edges = 0;
  long volume = 0;  // Delta |S|
  double measure = 0.0;
  double expansion = 0.0;
};

ExpansionQuery expansion(const RegularGraph& graph, const IndexSet& s);

struct ExpansionProfile {
  double value = 0.0;
  IndexSet minimizer;
};

ExpansionProfile expansion_profile(const RegularGraph& graph, double delta,
                                   unsigned long long budget = kDefaultEnumerationBudget);

struct ReductionInstance {
  RegularGraph graph;
  // |V| x |E|; may have fewer columns than rows, so it is not a PointSet.
  Eigen::MatrixXd points;
  std::vector<Edge> edge_of_point;
  std::vector<std::pair<double, double>> coefficients;
};

ReductionInstance reduce_sse_to_inlier(const RegularGraph& graph,
                                       std::uint64_t seed);

struct SpanBounds {
  int dim = 0;
  int neighborhood_size = 0;
  int components = 0;
  bool acyclic = false;
  bool lower_ok = false;
  bool upper_ok = false;
  // Meaningful only when acyclic; true otherwise.
  bool forest_exact = true;
};

SpanBounds dim_span_bounds_check(const ReductionInstance& instance,
                                 const IndexSet& edge_subset,
                                 const Tolerances& tol = {});

struct CompletenessReport {
  long induced_edges = 0;
  double fraction = 0.0;
  int subspace_dim = 0;
  // Points lying in the coordinate subspace on S.
  IndexSet contained_points;
  bool passes = false;
};

// With check_precondition, expansion(S) > epsilon is an ArgumentError.
CompletenessReport completeness_check(const ReductionInstance& instance,
                                      const IndexSet& s, double epsilon,
                                      bool check_precondition = true);

}  // namespace rsr

#endif  // RSR_SSE_HPP_
