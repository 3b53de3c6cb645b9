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

#include "rsr/derandomized.hpp"

#include "rsr/errors.hpp"

namespace rsr {

DerandomizedOutput derandomized_find(const PointSet& points,
                                     MembershipMode mode,
                                     const Tolerances& tol) {
  const int n = points.dimension();
  DerandomizedOutput out;
  IndexSet current = iota_set(points.size());

  while (static_cast<int>(current.size()) > n) {
    const int remaining = static_cast<int>(current.size()) - 1;
    MembershipQuery query{Eigen::VectorXd::Constant(remaining,
                                                    static_cast<double>(n) / remaining),
                          Polytope::basis};
    bool removed = false;
    int queries = 0;
    for (std::size_t k = 0; k < current.size(); ++k) {
      IndexSet rest = current;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const LinearMatroid sub(points.columns(rest), tol.rank_scale);
      ++queries;
      ++out.trace.membership_calls;
      MembershipAnswer ans = polytope_membership(sub, query, mode, tol);
      if (!ans.inside) {
        // Report the certificate in original column indices.
        for (int& c : ans.certificate) c = rest[static_cast<std::size_t>(c)];
        out.trace.steps.push_back(PeelStep{current[k], std::move(ans), queries});
        current = std::move(rest);
        removed = true;
        break;
      }
    }
    if (!removed) {
      throw StuckError("every candidate removal leaves the uniform vector "
                       "inside the basis polytope of " +
                       std::to_string(current.size()) +
                       " columns; the inliers do not exceed a d/n fraction "
                       "or the points are not in general position");
    }
  }

  if (numerical_rank(points.columns(current), tol.rank_scale) >= n) {
    throw StuckError("peeling ended on a linearly independent set");
  }
  out.trace.final_set = current;
  out.result = recover_from_dependence(
      points, DependenceWitness::from_subset(points, current, tol), tol);
  out.result.iterations = 0;
  out.result.method = RecoveryMethod::derandomized;
  return out;
}

}  // namespace rsr
