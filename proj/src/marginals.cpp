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

#include "rmp/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rmp {

MarginalSet delta_marginals(const FactorGraphInstance& instance, const std::vector<int>& x) {
  const int q = instance.alphabet.size();
  if (static_cast<int>(x.size()) != instance.num_variables) {
    throw std::domain_error("delta_marginals: assignment has wrong length");
  }
  MarginalSet m;
  m.node_marginals.assign(instance.num_variables, std::vector<double>(q, 0.0));
  for (int i = 0; i < instance.num_variables; ++i) {
    if (x[i] < 0 || x[i] >= q) throw std::domain_error("delta_marginals: label outside alphabet");
    m.node_marginals[i][x[i]] = 1.0;
  }
  for (const Factor& f : instance.factors) {
    std::vector<double> table(num_assignments(instance, f), 0.0);
    table[local_assignment(f, x, q)] = 1.0;
    m.factor_marginals.push_back(std::move(table));
  }
  return m;
}

MarginalSet uniform_marginals(const FactorGraphInstance& instance) {
  const int q = instance.alphabet.size();
  MarginalSet m;
  m.node_marginals.assign(instance.num_variables, std::vector<double>(q, 1.0 / q));
  for (const Factor& f : instance.factors) {
    const std::size_t size = num_assignments(instance, f);
    m.factor_marginals.emplace_back(size, 1.0 / static_cast<double>(size));
  }
  return m;
}

void check_shapes(const FactorGraphInstance& instance, const MarginalSet& marginals) {
  const int q = instance.alphabet.size();
  if (static_cast<int>(marginals.node_marginals.size()) != instance.num_variables ||
      static_cast<int>(marginals.factor_marginals.size()) != instance.num_factors()) {
    throw std::domain_error("marginals: wrong number of tables");
  }
  for (const auto& p : marginals.node_marginals) {
    if (static_cast<int>(p.size()) != q) throw std::domain_error("marginals: node table size");
  }
  for (int a = 0; a < instance.num_factors(); ++a) {
    if (marginals.factor_marginals[a].size() != num_assignments(instance, instance.factors[a])) {
      throw std::domain_error("marginals: factor " + std::to_string(a) + " table size");
    }
  }
}

double max_inconsistency(const FactorGraphInstance& instance, const MarginalSet& marginals) {
  check_shapes(instance, marginals);
  const int q = instance.alphabet.size();
  std::vector<double> local(q);
  double worst = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    for (int k = 0; k < f.degree(); ++k) {
      marginalize_onto(marginals.factor_marginals[a], k, f.degree(), q, local);
      const auto& pi = marginals.node_marginals[f.neighbors[k]];
      for (int x = 0; x < q; ++x) worst = std::max(worst, std::abs(local[x] - pi[x]));
    }
  }
  return worst;
}

}  // namespace rmp
