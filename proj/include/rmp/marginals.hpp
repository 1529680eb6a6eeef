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

#ifndef RMP_MARGINALS_HPP_
#define RMP_MARGINALS_HPP_

#include <vector>

#include "rmp/graph.hpp"

namespace rmp {

// Factor marginals p_a (laid out like the factor's assignment index) and node
// marginals p_i over the alphabet.
struct MarginalSet {
  std::vector<std::vector<double>> factor_marginals;
  std::vector<std::vector<double>> node_marginals;
};

// Point masses on the assignment x.
MarginalSet delta_marginals(const FactorGraphInstance& instance, const std::vector<int>& x);

// Uniform p_i and product-of-uniform p_a.
MarginalSet uniform_marginals(const FactorGraphInstance& instance);

// Largest |sum_{x_a \ i} p_a - p_i| over all edges and labels.
double max_inconsistency(const FactorGraphInstance& instance, const MarginalSet& marginals);

// Throws std::domain_error when the table shapes do not match the instance.
void check_shapes(const FactorGraphInstance& instance, const MarginalSet& marginals);

}  // namespace rmp

#endif  // RMP_MARGINALS_HPP_
