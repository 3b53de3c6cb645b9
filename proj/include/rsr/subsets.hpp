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

#ifndef RSR_SUBSETS_HPP_
#define RSR_SUBSETS_HPP_

#include <string>
#include <vector>

namespace rsr {

// C(n, k), saturating at ULLONG_MAX instead of overflowing.
unsigned long long binomial(int n, int k);

// Throws BudgetError when `count` exceeds `budget`.
void require_budget(unsigned long long count, unsigned long long budget,
                    const std::string& what);

// Calls f(subset) for every k-subset of {0, ..., n-1} in lexicographic order.
// f returns false to stop early. Returns the number of subsets visited.
template <typename F>
unsigned long long for_each_combination(int n, int k, F&& f) {
  if (k < 0 || k > n) return 0;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  unsigned long long visited = 0;
  while (true) {
    ++visited;
    if (!f(static_cast<const std::vector<int>&>(idx))) return visited;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return visited;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace rsr

#endif  // RSR_SUBSETS_HPP_
