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

#include "rmp/model_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

#include "rmp/rng.hpp"

namespace rmp {

void check_spec(const IsingSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("ising spec: n must be at least 2");
  if (!(spec.delta >= 0.0) || !std::isfinite(spec.delta)) {
    throw std::invalid_argument("ising spec: delta must be finite and >= 0");
  }
  if (!(spec.h >= 0.0) || !std::isfinite(spec.h)) {
    throw std::invalid_argument("ising spec: h must be finite and >= 0");
  }
  if (!(spec.edge_sign_prob >= 0.0 && spec.edge_sign_prob <= 1.0)) {
    throw std::invalid_argument("ising spec: edge_sign_prob must lie in [0, 1]");
  }
}

namespace {

std::vector<Edge> decode_prufer(const std::vector<int>& code, int n) {
  std::vector<int> degree(n, 1);
  for (int v : code) ++degree[v];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int v : code) {
    int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1) leaves.push(v);
  }
  int u = leaves.top();
  leaves.pop();
  int w = leaves.top();
  edges.emplace_back(std::min(u, w), std::max(u, w));
  return edges;
}

std::vector<Edge> draw_tree(int n, Rng& rng) {
  std::vector<int> code(n - 2);
  for (int& v : code) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return decode_prufer(code, n);
}

}  // namespace

std::vector<Edge> random_tree(int n, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("random_tree: n must be at least 2");
  Rng rng(seed);
  return draw_tree(n, rng);
}

IsingModel generate_ising(const IsingSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);
  IsingModel model;
  model.edges = draw_tree(spec.n, rng);
  model.edge_signs.reserve(model.edges.size());
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    model.edge_signs.push_back(rng.bernoulli(spec.edge_sign_prob) ? 1 : -1);
  }
  model.fields.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) model.fields.push_back(rng.uniform(-spec.h, spec.h));

  FactorGraphInstance& inst = model.instance;
  inst.alphabet.symbols = {-1.0, 1.0};
  inst.num_variables = spec.n;
  inst.factors.reserve(model.edges.size() + spec.n);

  const auto& spins = inst.alphabet.symbols;
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    const double s = model.edge_signs[e];
    Factor f;
    f.neighbors = {model.edges[e].first, model.edges[e].second};
    if (spec.delta == 0.0) {
      f.thetas = {s};
    } else {
      f.thetas = {s - spec.delta, s, s + spec.delta};
    }
    for (double xi : spins) {
      for (double xj : spins) {
        for (double theta : f.thetas) f.table.push_back(theta * xi * xj);
      }
    }
    inst.factors.push_back(std::move(f));
  }
  for (int i = 0; i < spec.n; ++i) {
    Factor f;
    f.neighbors = {i};
    f.thetas = {model.fields[i]};
    for (double xi : spins) f.table.push_back(model.fields[i] * xi);
    inst.factors.push_back(std::move(f));
  }
  return model;
}

FactorGraphInstance build_ising(const IsingSpec& spec) { return generate_ising(spec).instance; }

FactorGraphInstance nominal_instance(const FactorGraphInstance& instance) {
  FactorGraphInstance out = instance;
  for (std::size_t a = 0; a < out.factors.size(); ++a) {
    Factor& f = out.factors[a];
    const std::size_t k = f.thetas.size();
    if (k == 1) continue;
    if (k % 2 == 0) {
      throw std::domain_error("nominal_instance: factor " + std::to_string(a) +
                              " has an even-sized parameter domain with no centre");
    }
    const std::size_t centre = k / 2;
    const std::size_t rows = f.table.size() / k;
    std::vector<double> table(rows);
    for (std::size_t s = 0; s < rows; ++s) table[s] = f.table[s * k + centre];
    f.thetas = {f.thetas[centre]};
    f.table = std::move(table);
  }
  return out;
}

}  // namespace rmp
