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

#include "rsr/subsets.hpp"

#include <climits>

#include "rsr/errors.hpp"

namespace rsr {

unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    const unsigned long long num = static_cast<unsigned long long>(n - k + i);
    // r * num / i is exact at every step; guard the multiplication.
    if (r > ULLONG_MAX / num) return ULLONG_MAX;
    r = r * num / static_cast<unsigned long long>(i);
  }
  return r;
}

void require_budget(unsigned long long count, unsigned long long budget,
                    const std::string& what) {
  if (count > budget) {
    throw BudgetError(what + ": " + std::to_string(count) +
                      " subsets exceed the enumeration budget of " +
                      std::to_string(budget));
  }
}

}  // namespace rsr
