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

#ifndef RMP_MODEL_GEN_HPP_
#define RMP_MODEL_GEN_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "rmp/graph.hpp"

namespace rmp {

struct IsingSpec {
  int n = 2;
  double delta = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;
  double edge_sign_prob = 0.5;
};

// Throws std::invalid_argument when a field is out of range.
void check_spec(const IsingSpec& spec);

using Edge = std::pair<int, int>;

// Uniform random labelled tree on n nodes by Prufer decoding. Each edge is
// returned as (smaller, larger). Throws std::domain_error for n < 2.
std::vector<Edge> random_tree(int n, std::uint64_t seed);

// Ising model plus the sampled structure it was built from.
struct IsingModel {
  FactorGraphInstance instance;
  std::vector<Edge> edges;
  std::vector<int> edge_signs;  // +1 or -1 per edge
  std::vector<double> fields;   // theta_i per node
};

// Random draws come from one Rng(seed) stream, in this order:
//   1. n-2 Prufer symbols, each below(n)
//   2. one bernoulli(edge_sign_prob) per tree edge (true = positive)
//   3. one uniform(-h, h) per node
// so the tree, edge classes and fields depend only on (n, seed,
// edge_sign_prob, h), never on delta.
//
// Factors: one pairwise factor per tree edge (in tree order) with domain
// {s - delta, s, s + delta} (just {s} for delta == 0), then one unary
// factor per node with the singleton domain {theta_i}.
IsingModel generate_ising(const IsingSpec& spec);

FactorGraphInstance build_ising(const IsingSpec& spec);

// Collapses every odd-sized parameter domain onto its centre element.
// Throws std::domain_error for an even-sized domain.
FactorGraphInstance nominal_instance(const FactorGraphInstance& instance);

}  // namespace rmp

#endif  // RMP_MODEL_GEN_HPP_
