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

#include "rmp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rmp {

std::size_t int_pow(int base, int exponent) {
  std::size_t result = 1;
  for (int k = 0; k < exponent; ++k) {
    if (result > static_cast<std::size_t>(std::numeric_limits<int>::max()) / base) {
      throw std::overflow_error("factor table too large");
    }
    result *= static_cast<std::size_t>(base);
  }
  return result;
}

std::size_t num_assignments(const FactorGraphInstance& instance, const Factor& factor) {
  return int_pow(instance.alphabet.size(), factor.degree());
}

int assignment_digit(std::size_t assignment, int position, int degree, int alphabet_size) {
  for (int k = degree - 1; k > position; --k) assignment /= alphabet_size;
  return static_cast<int>(assignment % alphabet_size);
}

void marginalize_onto(std::span<const double> factor_table, int position, int degree,
                      int alphabet_size, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t s = 0; s < factor_table.size(); ++s) {
    out[assignment_digit(s, position, degree, alphabet_size)] += factor_table[s];
  }
}

Adjacency build_adjacency(const FactorGraphInstance& instance) {
  Adjacency adj;
  adj.variable_edges.resize(instance.num_variables);
  adj.edge_offset.resize(instance.factors.size());
  int edge = 0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    adj.edge_offset[a] = edge;
    const Factor& f = instance.factors[a];
    for (int k = 0; k < f.degree(); ++k, ++edge) {
      int i = f.neighbors[k];
      if (i >= 0 && i < instance.num_variables) {
        adj.variable_edges[i].push_back({a, k, edge});
      }
    }
  }
  adj.num_edges = edge;
  return adj;
}

std::vector<std::string> validate(const FactorGraphInstance& instance) {
  std::vector<std::string> errors;
  auto report = [&errors](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    errors.push_back(os.str());
  };

  const int q = instance.alphabet.size();
  if (q < 2) report("alphabet: needs at least 2 symbols, got ", q);
  {
    std::set<double> seen(instance.alphabet.symbols.begin(), instance.alphabet.symbols.end());
    if (seen.size() != instance.alphabet.symbols.size()) report("alphabet: duplicate symbols");
  }
  if (instance.num_variables < 1) report("variables: need at least one variable");

  std::vector<int> var_degree(std::max(instance.num_variables, 0), 0);
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    if (f.neighbors.empty()) report("factor ", a, ": degree must be at least 1");
    bool neighbors_ok = true;
    for (std::size_t k = 0; k < f.neighbors.size(); ++k) {
      int i = f.neighbors[k];
      if (i < 0 || i >= instance.num_variables) {
        report("factor ", a, ": neighbor ", i, " out of range");
        neighbors_ok = false;
        continue;
      }
      if (k > 0 && f.neighbors[k - 1] >= i) {
        report("factor ", a, ": neighbors must be strictly ascending (duplicate edge or unsorted)");
        neighbors_ok = false;
      }
      ++var_degree[i];
    }
    if (f.thetas.empty()) report("factor ", a, ": empty parameter domain");
    for (double t : f.thetas) {
      if (!std::isfinite(t)) report("factor ", a, ": non-finite parameter label");
    }
    if (neighbors_ok && q >= 2 && !f.neighbors.empty()) {
      std::size_t expected = 0;
      try {
        expected = num_assignments(instance, f) * f.thetas.size();
      } catch (const std::overflow_error&) {
        report("factor ", a, ": table shape overflows");
        continue;
      }
      if (f.table.size() != expected) {
        report("factor ", a, ": table shape mismatch, expected ", expected, " entries, got ",
               f.table.size());
      }
    }
    for (std::size_t s = 0; s < f.table.size(); ++s) {
      if (!std::isfinite(f.table[s])) {
        report("factor ", a, ": non-finite potential at entry ", s);
        break;
      }
    }
  }
  for (int i = 0; i < instance.num_variables; ++i) {
    if (var_degree[i] == 0) report("variable ", i, ": degree must be at least 1");
  }
  return errors;
}

void require_valid(const FactorGraphInstance& instance) {
  auto errors = validate(instance);
  if (errors.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& e : errors) msg += "\n  " + e;
  throw std::invalid_argument(msg);
}

std::size_t local_assignment(const Factor& factor, std::span<const int> x, int alphabet_size) {
  std::size_t idx = 0;
  for (int i : factor.neighbors) idx = idx * alphabet_size + static_cast<std::size_t>(x[i]);
  return idx;
}

double objective_eval(const FactorGraphInstance& instance, const PureStrategyPair& s) {
  const int q = instance.alphabet.size();
  if (static_cast<int>(s.x.size()) != instance.num_variables) {
    throw std::domain_error("objective_eval: x has wrong length");
  }
  if (static_cast<int>(s.theta.size()) != instance.num_factors()) {
    throw std::domain_error("objective_eval: theta has wrong length");
  }
  for (int v : s.x) {
    if (v < 0 || v >= q) throw std::domain_error("objective_eval: x outside the alphabet");
  }
  double total = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    if (s.theta[a] < 0 || s.theta[a] >= f.num_thetas()) {
      throw std::domain_error("objective_eval: theta outside the factor's parameter domain");
    }
    total += f.psi(local_assignment(f, s.x, q), s.theta[a]);
  }
  return total;
}

bool is_tree(const FactorGraphInstance& instance) {
  const int n = instance.num_variables;
  const int nodes = n + instance.num_factors();
  std::size_t edges = 0;
  for (const Factor& f : instance.factors) edges += f.neighbors.size();
  if (nodes == 0 || edges + 1 != static_cast<std::size_t>(nodes)) return false;

  // Union-find over variables (0..n-1) and factors (n..n+m-1).
  std::vector<int> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int a = 0; a < instance.num_factors(); ++a) {
    for (int i : instance.factors[a].neighbors) {
      int ra = find(n + a);
      int ri = find(i);
      if (ra == ri) return false;
      parent[ra] = ri;
    }
  }
  return true;
}

}  // namespace rmp
