// Copyright 2026 The Robust Max-Product Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RMP_NOMINAL_MP_HPP_
#define RMP_NOMINAL_MP_HPP_

#include <vector>

#include "rmp/graph.hpp"

namespace rmp {

struct MapResult {
  std::vector<int> assignment;
  double value = 0.0;
};

struct MaxProductOptions {
  // Shift every message so its maximum is zero.
  bool normalize = true;
};

// Exact MAP of sum_a psi_a on a tree with singleton parameter domains, by
// max-sum message passing towards variable 0 followed by back-pointer
// decoding. Ties go to the lower alphabet index. Throws std::domain_error for
// non-trees or non-singleton domains.
MapResult max_product_map(const FactorGraphInstance& instance, const MaxProductOptions& options = {});

inline constexpr std::size_t kBruteForceCap = std::size_t{1} << 20;

// Exhaustive maximum over X^V; the lexicographically first maximiser wins
// (variable 0 most significant). Throws std::domain_error above
// kBruteForceCap or for non-singleton domains.
MapResult brute_force_map(const FactorGraphInstance& instance);

}  // namespace rmp

#endif  // RMP_NOMINAL_MP_HPP_
