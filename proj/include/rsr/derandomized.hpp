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

#ifndef RSR_DERANDOMIZED_HPP_
#define RSR_DERANDOMIZED_HPP_

#include <vector>

#include "rsr/instance.hpp"
#include "rsr/matroid.hpp"

namespace rsr {

struct PeelStep {
  // Original column index removed in this step.
  int removed_index = -1;
  // Answer for the uniform vector on the remaining columns ("outside").
  MembershipAnswer answer;
  // Membership queries spent on this removal, including the final one.
  int queries = 0;
};

struct PeelTrace {
  std::vector<PeelStep> steps;
  // The n columns left when peeling stops; rank deficient.
  IndexSet final_set;
  long membership_calls = 0;
};

struct DerandomizedOutput {
  RecoveryResult result;
  PeelTrace trace;
};

// Deterministic recovery. Starting from all columns U, repeatedly removes
// the lowest index i for which (n / |U - i|) * 1 lies outside the basis
// polytope of the columns U - i, until |U| = n; the survivors are then
// linearly dependent and the inliers follow from their kernel. Throws
// StuckError when a full scan finds no such i.
DerandomizedOutput derandomized_find(const PointSet& points,
                                     MembershipMode mode = MembershipMode::automatic,
                                     const Tolerances& tol = {});

}  // namespace rsr

#endif  // RSR_DERANDOMIZED_HPP_
