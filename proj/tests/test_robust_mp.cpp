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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "helpers.hpp"
#include "rmp/game_eval.hpp"
#include "rmp/model_gen.hpp"
#include "rmp/nominal_mp.hpp"
#include "rmp/robust_mp.hpp"

using namespace rmp;
using namespace rmp::testing;

namespace {

// Per-factor QP objective, written out independently of the solver.
double factor_objective(const Factor& f, const std::vector<double>& p_a, double rho,
                        const std::vector<std::vector<double>>& targets) {
  double lambda = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < f.num_thetas(); ++t) {
    double e = 0.0;
    for (std::size_t s = 0; s < p_a.size(); ++s) e += p_a[s] * f.psi(s, t);
    lambda = std::max(lambda, -e);
  }
  double penalty = 0.0;
  for (int k = 0; k < f.degree(); ++k) {
    std::vector<double> m(2, 0.0);
    for (std::size_t s = 0; s < p_a.size(); ++s) m[assignment_digit(s, k, f.degree(), 2)] += p_a[s];
    for (int x = 0; x < 2; ++x) penalty += (m[x] - targets[k][x]) * (m[x] - targets[k][x]);
  }
  return lambda + 0.5 * rho * penalty;
}

std::vector<FactorGraphInstance> small_trees() {
  std::vector<FactorGraphInstance> out;
  std::uint64_t seed = 100;
  for (int n = 2; n <= 7; ++n) {
    for (double delta : {0.0, 0.5, 1.0}) {
      for (double h : {0.0, 0.5}) out.push_back(build_ising({.n = n, .delta = delta, .h = h, .seed = seed++}));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("init: uniform marginals, zero duals, tight epigraph") {
  const FactorGraphInstance g = build_ising({.n = 4, .delta = 1.0, .h = 0.7, .seed = 2});
  const AdmmState s = init(g);
  for (const auto& p : s.marginals.node_marginals) CHECK(p == std::vector<double>{0.5, 0.5});
  for (const auto& u : s.duals) CHECK(u == std::vector<double>{0.0, 0.0});
  CHECK(s.duals.size() == 2 * 3 + 4);
  CHECK(s.marginals.factor_marginals[0] == std::vector<double>(4, 0.25));
  for (int a = 0; a < g.num_factors(); ++a) {
    // uniform p_a gives <p_a, psi> = 0 for every spin potential
    CHECK(s.epigraph[a] == doctest::Approx(0.0));
  }
  CHECK(s.iteration == 0);
}

TEST_CASE("factor_update examples") {
  const AdmmConfig cfg{.rho = 1.0};
  SUBCASE("zero potential pulls p_a onto the target") {
    const FactorGraphInstance g{spin(), 1, {field_factor(0, {0.0})}};
    const FactorUpdate up = factor_update(g, 0, init(g), cfg);
    CHECK(up.marginal[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(up.marginal[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(up.lambda == doctest::Approx(0.0));
  }
  SUBCASE("psi = theta x with theta = 1") {
    const FactorGraphInstance g{spin(), 1, {field_factor(0, {1.0})}};
    const FactorUpdate up = factor_update(g, 0, init(g), cfg);
    CHECK(up.marginal[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(up.marginal[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(up.lambda == doctest::Approx(-1.5).epsilon(1e-12));
  }
  SUBCASE("positive edge with domain {0, 1, 2} against a 1/64 grid") {
    const FactorGraphInstance g = one_edge({0.0, 1.0, 2.0});
    const AdmmState state = init(g);
    const FactorUpdate up = factor_update(g, 0, state, cfg);
    const std::vector<std::vector<double>> targets{{0.5, 0.5}, {0.5, 0.5}};
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= 64; ++a)
      for (int b = 0; b <= 64; ++b)
        for (int c = 0; c <= 64; ++c)
          for (int d = 0; d <= 64; ++d) {
            const std::vector<double> p{a / 64.0, b / 64.0, c / 64.0, d / 64.0};
            best = std::min(best, factor_objective(g.factors[0], p, 1.0, targets));
          }
    const double solved = factor_objective(g.factors[0], up.marginal, 1.0, targets);
    CHECK(solved <= best + 1e-12);
    CHECK(solved >= best - 1.0 / 64.0);
    CHECK(up.lambda == doctest::Approx(0.0).epsilon(1e-9));
    const auto& p = up.marginal;
    CHECK(p[0] - p[1] - p[2] + p[3] >= -1e-9);  // E[x_i x_j] >= 0
  }
}

TEST_CASE("factor_update keeps the epigraph constraint tight") {
  const FactorGraphInstance g = build_ising({.n = 6, .delta = 1.0, .h = 1.0, .seed = 4});
  AdmmState s = init(g);
  const AdmmConfig cfg;
  for (int t = 0; t < 5; ++t) iterate(g, s, cfg);
  for (int a = 0; a < g.num_factors(); ++a) {
    const FactorUpdate up = factor_update(g, a, s, cfg);
    const Factor& f = g.factors[a];
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < f.num_thetas(); ++t) {
      double e = 0.0;
      for (std::size_t x = 0; x < up.marginal.size(); ++x) e += up.marginal[x] * f.psi(x, t);
      worst = std::max(worst, -e);
    }
    CHECK(up.lambda == doctest::Approx(worst).epsilon(1e-9));
  }
}

TEST_CASE("variable_update examples") {
  SUBCASE("single neighbour in the simplex") {
    const FactorGraphInstance g{spin(), 1, {field_factor(0, {0.0})}};
    AdmmState s = init(g);
    s.marginals.factor_marginals[0] = {0.3, 0.7};
    const auto p = variable_update(g, 0, s);
    CHECK(p[0] == doctest::Approx(0.3));
    CHECK(p[1] == doctest::Approx(0.7));
  }
  SUBCASE("two neighbours average") {
    const FactorGraphInstance g{spin(), 1, {field_factor(0, {0.0}), field_factor(0, {1.0})}};
    AdmmState s = init(g);
    s.marginals.factor_marginals[0] = {0.2, 0.8};
    s.marginals.factor_marginals[1] = {0.6, 0.4};
    const auto p = variable_update(g, 0, s);
    CHECK(p[0] == doctest::Approx(0.4));
    CHECK(p[1] == doctest::Approx(0.6));
  }
  SUBCASE("projection clips an infeasible average") {
    const FactorGraphInstance g{spin(), 1, {field_factor(0, {0.0})}};
    AdmmState s = init(g);
    s.marginals.factor_marginals[0] = {1.0, 0.4};
    s.duals[0] = {0.2, -0.2};  // M p_a + u = (1.2, 0.2)
    const auto p = variable_update(g, 0, s);
    CHECK(p[0] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(0.0));
  }
  SUBCASE("pairwise factor is marginalised onto the right neighbour") {
    const FactorGraphInstance g = one_edge({1.0});
    AdmmState s = init(g);
    s.marginals.factor_marginals[0] = {0.1, 0.2, 0.3, 0.4};
    CHECK(variable_update(g, 0, s)[0] == doctest::Approx(0.3));
    CHECK(variable_update(g, 1, s)[0] == doctest::Approx(0.4));
  }
}

TEST_CASE("dual_update and residuals") {
  const FactorGraphInstance g{spin(), 1, {field_factor(0, {0.0})}};
  AdmmState s = init(g);
  SUBCASE("consistent marginals leave the duals at zero") {
    dual_update(g, s);
    CHECK(s.duals[0] == std::vector<double>{0.0, 0.0});
    for (int t = 0; t < 3; ++t) dual_update(g, s);
    CHECK(s.duals[0] == std::vector<double>{0.0, 0.0});
    const Residuals r = residuals(g, s);
    CHECK(r.mean_l1 == 0.0);
    CHECK(r.values == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("inconsistent marginals") {
    s.marginals.factor_marginals[0] = {0.6, 0.4};
    const Residuals r = residuals(g, s);
    CHECK(r.mean_l1 == doctest::Approx(0.1));
    CHECK(r.values[0] == doctest::Approx(-0.1));
    CHECK(r.values[1] == doctest::Approx(0.1));
    dual_update(g, s);
    CHECK(s.duals[0][0] == doctest::Approx(0.1));
    CHECK(s.duals[0][1] == doctest::Approx(-0.1));
  }
}

TEST_CASE("solve examples") {
  const AdmmConfig cfg{.rho = 1.0, .max_iter = 5000};
  SUBCASE("one positive edge, delta 1") {
    const SolveReport r = solve(one_edge({0.0, 1.0, 2.0}), cfg);
    CHECK(r.converged);
    CHECK(r.engineer_objective == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(std::abs(r.engineer_objective) <= 1e-4);
  }
  SUBCASE("one negative edge, delta 0.5") {
    const SolveReport r = solve(one_edge({-1.5, -1.0, -0.5}), cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.engineer_objective - 0.5) <= 1e-4);
  }
  SUBCASE("delta 0 tree reproduces the MAP value") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = build_ising({.n = 8, .delta = 0.0, .h = 0.5, .seed = seed});
      const SolveReport r = solve(g, cfg);
      CHECK(r.converged);
      CHECK(std::abs(r.engineer_objective - max_product_map(g).value) <= 1e-4);
    }
  }
}

TEST_CASE("solve reports non-convergence and validates its inputs") {
  const auto g = build_ising({.n = 10, .delta = 1.0, .h = 1.0, .seed = 3});
  const SolveReport r = solve(g, {.max_iter = 1});
  CHECK_FALSE(r.converged);
  CHECK(r.iterations_used == 1);
  CHECK(r.objective_trace.size() == 1);
  CHECK(r.internal_cost_trace.size() == 1);
  CHECK(r.residual_trace.size() == 1);
  CHECK(r.wall_ms_trace.size() == 1);

  CHECK_THROWS_AS(solve(g, {.rho = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve(g, {.max_iter = 0}), std::invalid_argument);
  CHECK_THROWS_AS(solve(g, {.primal_tol = -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(solve(g, {.objective_tol = 0.0}), std::invalid_argument);
  FactorGraphInstance bad = g;
  bad.factors[0].table.pop_back();
  CHECK_THROWS_AS(solve(bad, {}), std::invalid_argument);
}

TEST_CASE("property: factor steps stay feasible along the whole run") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto g = build_ising({.n = 7, .delta = 1.0, .h = 1.0, .seed = seed});
    AdmmState s = init(g);
    const AdmmConfig cfg;
    for (int t = 0; t < 40; ++t) {
      iterate(g, s, cfg);
      for (int a = 0; a < g.num_factors(); ++a) {
        const Factor& f = g.factors[a];
        const auto& p = s.marginals.factor_marginals[a];
        CHECK(*std::min_element(p.begin(), p.end()) >= -1e-10);
        for (int th = 0; th < f.num_thetas(); ++th) {
          double e = 0.0;
          for (std::size_t x = 0; x < p.size(); ++x) e += p[x] * f.psi(x, th);
          CHECK(s.epigraph[a] + e >= -1e-8);
        }
      }
    }
  }
}

TEST_CASE("property: residual converges for rho in [0.5, 4] and J matches the oracles") {
  const auto trees = small_trees();
  for (double rho : {0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(rho);
    for (std::size_t k = 0; k < trees.size(); k += 2) {
      const auto& g = trees[k];
      CAPTURE(k);
      const SolveReport r = solve(g, {.rho = rho, .max_iter = 2000});
      CHECK(r.converged);
      CHECK(r.residual_trace.back() <= 1e-6);
      const LocLpResult lp = loc_lp(g);
      REQUIRE(lp.status == SolveStatus::kOptimal);
      CHECK(std::abs(r.engineer_objective - lp.value) <= 1e-3);
      const JointMinimaxResult joint = exact_minimax_joint(g);
      REQUIRE(joint.status == SolveStatus::kOptimal);
      CHECK(std::abs(r.engineer_objective - joint.value) <= 1e-3);
    }
  }
}

TEST_CASE("property: solve is bitwise reproducible") {
  const auto g = build_ising({.n = 20, .delta = 1.0, .h = 1.0, .seed = 9});
  const SolveReport a = solve(g, {.max_iter = 200});
  const SolveReport b = solve(g, {.max_iter = 200});
  CHECK(a.internal_cost_trace == b.internal_cost_trace);
  CHECK(a.objective_trace == b.objective_trace);
  CHECK(a.residual_trace == b.residual_trace);
  CHECK(a.marginals.factor_marginals == b.marginals.factor_marginals);
  CHECK(a.marginals.node_marginals == b.marginals.node_marginals);
}
