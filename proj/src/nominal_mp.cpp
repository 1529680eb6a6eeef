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

#include "rmp/nominal_mp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rmp {
namespace {

void require_singletons(const FactorGraphInstance& instance, const char* who) {
  for (const Factor& f : instance.factors) {
    if (f.num_thetas() != 1) {
      throw std::domain_error(std::string(who) + ": every parameter domain must be a singleton");
    }
  }
}

}  // namespace

MapResult max_product_map(const FactorGraphInstance& instance, const MaxProductOptions& options) {
  require_valid(instance);
  require_singletons(instance, "max_product_map");
  if (!is_tree(instance)) throw std::domain_error("max_product_map: instance is not a tree");

  const int q = instance.alphabet.size();
  const int n = instance.num_variables;
  const int m = instance.num_factors();
  const Adjacency adj = build_adjacency(instance);

  // Breadth-first order from variable 0; each factor remembers the position
  // of its parent variable, each variable its parent factor.
  std::vector<int> factor_parent_pos(m, -1);
  std::vector<int> var_parent(n, -1);
  std::vector<char> seen_factor(m, 0);
  std::vector<int> var_order{0};
  std::vector<int> factor_order;
  for (std::size_t head = 0; head < var_order.size(); ++head) {
    const int i = var_order[head];
    for (const EdgeRef& e : adj.variable_edges[i]) {
      if (seen_factor[e.factor]) continue;
      seen_factor[e.factor] = 1;
      factor_parent_pos[e.factor] = e.position;
      factor_order.push_back(e.factor);
      for (int j : instance.factors[e.factor].neighbors) {
        if (j == i) continue;
        var_parent[j] = e.factor;
        var_order.push_back(j);
      }
    }
  }

  // incoming[i] accumulates messages from child factors of i.
  std::vector<std::vector<double>> incoming(n, std::vector<double>(q, 0.0));
  // best_assignment[a][x] = argmax local assignment of a given its parent at x.
  std::vector<std::vector<std::size_t>> best_assignment(m);

  auto normalize = [&options](std::vector<double>& msg) {
    if (!options.normalize) return;
    const double top = *std::max_element(msg.begin(), msg.end());
    for (double& v : msg) v -= top;
  };

  // Leaves to root: factors in reverse BFS order see complete child messages.
  for (auto it = factor_order.rbegin(); it != factor_order.rend(); ++it) {
    const int a = *it;
    const Factor& f = instance.factors[a];
    const int parent_pos = factor_parent_pos[a];
    std::vector<double> msg(q, -std::numeric_limits<double>::infinity());
    best_assignment[a].assign(q, 0);
    const std::size_t size = num_assignments(instance, f);
    for (std::size_t s = 0; s < size; ++s) {
      double score = f.psi(s, 0);
      int parent_value = 0;
      for (int k = 0; k < f.degree(); ++k) {
        const int digit = assignment_digit(s, k, f.degree(), q);
        if (k == parent_pos) {
          parent_value = digit;
        } else {
          score += incoming[f.neighbors[k]][digit];
        }
      }
      if (score > msg[parent_value]) {
        msg[parent_value] = score;
        best_assignment[a][parent_value] = s;
      }
    }
    normalize(msg);
    std::vector<double>& target = incoming[f.neighbors[parent_pos]];
    for (int x = 0; x < q; ++x) target[x] += msg[x];
  }

  MapResult out;
  out.assignment.assign(n, -1);
  const auto& root_belief = incoming[0];
  out.assignment[0] = static_cast<int>(
      std::distance(root_belief.begin(), std::max_element(root_belief.begin(), root_belief.end())));

  for (int a : factor_order) {
    const Factor& f = instance.factors[a];
    const int parent_value = out.assignment[f.neighbors[factor_parent_pos[a]]];
    const std::size_t s = best_assignment[a][parent_value];
    for (int k = 0; k < f.degree(); ++k) {
      if (k != factor_parent_pos[a]) out.assignment[f.neighbors[k]] = assignment_digit(s, k, f.degree(), q);
    }
  }

  PureStrategyPair pair{out.assignment, std::vector<int>(m, 0)};
  out.value = objective_eval(instance, pair);
  return out;
}

MapResult brute_force_map(const FactorGraphInstance& instance) {
  require_valid(instance);
  require_singletons(instance, "brute_force_map");
  const int q = instance.alphabet.size();
  const int n = instance.num_variables;
  std::size_t total = 0;
  try {
    total = int_pow(q, n);
  } catch (const std::overflow_error&) {
    total = kBruteForceCap + 1;
  }
  if (total > kBruteForceCap) throw std::domain_error("brute_force_map: |X|^n exceeds the cap");

  PureStrategyPair pair{std::vector<int>(n, 0), std::vector<int>(instance.num_factors(), 0)};
  MapResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double v = objective_eval(instance, pair);
    if (v > best.value) {
      best.value = v;
      best.assignment = pair.x;
    }
    // Odometer increment, last variable fastest.
    for (int i = n - 1; i >= 0; --i) {
      if (++pair.x[i] < q) break;
      pair.x[i] = 0;
    }
  }
  return best;
}

}  // namespace rmp
