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

#ifndef RMP_GRAPH_HPP_
#define RMP_GRAPH_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace rmp {

// Finite alphabet of variable labels. Symbol k is addressed by its index k.
struct Alphabet {
  std::vector<double> symbols;

  int size() const { return static_cast<int>(symbols.size()); }
};

// A factor node: its (strictly ascending) variable neighbours, the finite
// parameter domain Nature picks from, and the dense potential table.
//
// The table is laid out assignment-major, theta-minor:
//   table[assignment * thetas.size() + theta_index]
// where `assignment` linearises x over `neighbors` in row-major order (the
// first neighbour is the most significant digit).
struct Factor {
  std::vector<int> neighbors;
  std::vector<double> thetas;
  std::vector<double> table;

  int degree() const { return static_cast<int>(neighbors.size()); }
  int num_thetas() const { return static_cast<int>(thetas.size()); }

  double psi(std::size_t assignment, std::size_t theta_index) const {
    return table[assignment * thetas.size() + theta_index];
  }
};

// Bipartite factor graph game. Variables are 0..num_variables-1, factors are
// indexed by position in `factors`. Treated as immutable once built.
struct FactorGraphInstance {
  Alphabet alphabet;
  int num_variables = 0;
  std::vector<Factor> factors;

  int num_factors() const { return static_cast<int>(factors.size()); }
};

// One (variable, factor) edge of the bipartite graph.
struct EdgeRef {
  int factor = 0;
  int position = 0;  // index of the variable inside factor.neighbors
  int edge = 0;      // global edge id
};

// Edge numbering is factor-major: the edges of factor a are
// edge_offset[a] .. edge_offset[a] + degree(a) - 1.
struct Adjacency {
  std::vector<int> edge_offset;
  std::vector<std::vector<EdgeRef>> variable_edges;
  int num_edges = 0;
};

Adjacency build_adjacency(const FactorGraphInstance& instance);

// |X|^k, throwing std::overflow_error past the int range.
std::size_t int_pow(int base, int exponent);

std::size_t num_assignments(const FactorGraphInstance& instance, const Factor& factor);

// Digit of `assignment` belonging to neighbour `position` (row-major).
int assignment_digit(std::size_t assignment, int position, int degree, int alphabet_size);

// Sums a factor table of size |X|^deg down to the marginal of one neighbour.
void marginalize_onto(std::span<const double> factor_table, int position, int degree,
                      int alphabet_size, std::span<double> out);

// Engineer assigns x[i] (alphabet index), Nature assigns theta[a] (index into
// factors[a].thetas).
struct PureStrategyPair {
  std::vector<int> x;
  std::vector<int> theta;
};

// Every violated structural invariant; empty means the instance is valid.
std::vector<std::string> validate(const FactorGraphInstance& instance);

// Throws std::invalid_argument listing all problems when validate() fails.
void require_valid(const FactorGraphInstance& instance);

// Sum over factors of psi_a(x_{neighbors(a)}; theta_a).
// Throws std::domain_error on a malformed assignment.
double objective_eval(const FactorGraphInstance& instance, const PureStrategyPair& s);

// Joint index of x restricted to the factor's neighbours.
std::size_t local_assignment(const Factor& factor, std::span<const int> x, int alphabet_size);

// Connected and acyclic as a bipartite graph over V and F.
bool is_tree(const FactorGraphInstance& instance);

}  // namespace rmp

#endif  // RMP_GRAPH_HPP_
