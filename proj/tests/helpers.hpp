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

#ifndef RMP_TESTS_HELPERS_HPP_
#define RMP_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "rmp/game_eval.hpp"
#include "rmp/graph.hpp"
#include "rmp/marginals.hpp"

namespace rmp::testing {

inline Alphabet spin() { return Alphabet{{-1.0, 1.0}}; }

// psi = theta * x_i * x_j on the spin alphabet, written out by hand.
inline Factor pair_factor(int i, int j, std::vector<double> thetas) {
  Factor f{{i, j}, thetas, {}};
  const double xs[2] = {-1.0, 1.0};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (double t : thetas) f.table.push_back(t * xs[a] * xs[b]);
    }
  }
  return f;
}

inline Factor field_factor(int i, std::vector<double> thetas) {
  Factor f{{i}, thetas, {}};
  for (double x : {-1.0, 1.0}) {
    for (double t : thetas) f.table.push_back(t * x);
  }
  return f;
}

// Two spins joined by one edge with the given parameter domain, no fields.
inline FactorGraphInstance one_edge(std::vector<double> thetas) {
  return FactorGraphInstance{spin(), 2, {pair_factor(0, 1, std::move(thetas))}};
}

// Chain 0-1-2 with edge parameters and one field factor per node.
inline FactorGraphInstance chain3(double edge_theta, std::vector<double> fields) {
  FactorGraphInstance g{spin(), 3, {pair_factor(0, 1, {edge_theta}), pair_factor(1, 2, {edge_theta})}};
  for (int i = 0; i < 3; ++i) g.factors.push_back(field_factor(i, {fields[i]}));
  return g;
}

// Random point of the simplex of dimension d (flat Dirichlet).
inline std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t d) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(d);
  double total = 0.0;
  for (double& v : p) total += (v = e(rng));
  for (double& v : p) v /= total;
  return p;
}

// Joint distribution over X^V, variable 0 most significant.
inline MarginalSet marginals_of_joint(const FactorGraphInstance& g, const std::vector<double>& joint) {
  const int k = g.alphabet.size();
  MarginalSet m;
  m.node_marginals.assign(g.num_variables, std::vector<double>(k, 0.0));
  for (const Factor& f : g.factors) {
    m.factor_marginals.emplace_back(static_cast<std::size_t>(std::pow(k, f.degree()) + 0.5), 0.0);
  }
  std::vector<int> x(g.num_variables);
  for (std::size_t s = 0; s < joint.size(); ++s) {
    std::size_t rest = s;
    for (int i = g.num_variables - 1; i >= 0; --i) {
      x[i] = static_cast<int>(rest % k);
      rest /= k;
    }
    for (int i = 0; i < g.num_variables; ++i) m.node_marginals[i][x[i]] += joint[s];
    for (std::size_t a = 0; a < g.factors.size(); ++a) {
      std::size_t idx = 0;
      for (int v : g.factors[a].neighbors) idx = idx * k + x[v];
      m.factor_marginals[a][idx] += joint[s];
    }
  }
  return m;
}

inline NatureStrategy random_nature(const FactorGraphInstance& g, std::mt19937_64& rng) {
  NatureStrategy q;
  for (const Factor& f : g.factors) q.q.push_back(random_simplex_point(rng, f.thetas.size()));
  return q;
}

// Random joint over X^V; every few draws it collapses to a point mass so
// vertices of the strategy space are covered too.
inline EngineerStrategy random_engineer(const FactorGraphInstance& g, std::mt19937_64& rng, int trial) {
  const std::size_t size = std::size_t{1} << g.num_variables;
  std::vector<double> joint = random_simplex_point(rng, size);
  if (trial % 5 == 0) {
    std::fill(joint.begin(), joint.end(), 0.0);
    joint[rng() % size] = 1.0;
  }
  return EngineerStrategy{marginals_of_joint(g, joint), std::nullopt};
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rmp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace rmp::testing

#endif  // RMP_TESTS_HELPERS_HPP_
