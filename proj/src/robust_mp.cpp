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

#include "rmp/robust_mp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "rmp/numerics.hpp"

namespace rmp {
namespace {

double expected_potential(const Factor& f, std::span<const double> p_a, int theta) {
  double v = 0.0;
  for (std::size_t s = 0; s < p_a.size(); ++s) v += p_a[s] * f.psi(s, theta);
  return v;
}

// max_theta -<p_a, psi_a(.; theta)>, the tight epigraph value.
double tight_lambda(const Factor& f, std::span<const double> p_a) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < f.num_thetas(); ++t) worst = std::max(worst, -expected_potential(f, p_a, t));
  return worst;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void check_config(const AdmmConfig& cfg) {
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho)) throw std::invalid_argument("admm: rho must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("admm: max_iter must be >= 1");
  if (!(cfg.primal_tol > 0.0)) throw std::invalid_argument("admm: primal_tol must be > 0");
  if (!(cfg.objective_tol > 0.0)) throw std::invalid_argument("admm: objective_tol must be > 0");
}

AdmmState init(const FactorGraphInstance& instance) {
  AdmmState state;
  state.marginals = uniform_marginals(instance);
  const int q = instance.alphabet.size();
  std::size_t edges = 0;
  for (const Factor& f : instance.factors) edges += f.neighbors.size();
  state.duals.assign(edges, std::vector<double>(q, 0.0));
  state.epigraph.reserve(instance.factors.size());
  for (int a = 0; a < instance.num_factors(); ++a) {
    state.epigraph.push_back(tight_lambda(instance.factors[a], state.marginals.factor_marginals[a]));
  }
  return state;
}

FactorUpdate factor_update(const FactorGraphInstance& instance, int factor, const AdmmState& state,
                           const AdmmConfig& cfg) {
  const Factor& f = instance.factors[factor];
  const int q = instance.alphabet.size();
  const int deg = f.degree();
  const int size = static_cast<int>(num_assignments(instance, f));
  const int thetas = f.num_thetas();
  const int dim = size + 1;  // p_a then lambda_a

  int edge = 0;
  for (int b = 0; b < factor; ++b) edge += instance.factors[b].degree();

  // Per-neighbour targets t_k = p_i - u_ai.
  std::vector<std::vector<double>> target(deg, std::vector<double>(q));
  for (int k = 0; k < deg; ++k) {
    const auto& pi = state.marginals.node_marginals[f.neighbors[k]];
    const auto& u = state.duals[edge + k];
    for (int x = 0; x < q; ++x) target[k][x] = pi[x] - u[x];
  }

  // Digits of every assignment, computed once.
  std::vector<int> digit(static_cast<std::size_t>(size) * deg);
  for (int s = 0; s < size; ++s) {
    for (int k = 0; k < deg; ++k) digit[s * deg + k] = assignment_digit(s, k, deg, q);
  }

  QpProblem qp;
  qp.Q = Eigen::MatrixXd::Zero(dim, dim);
  qp.c = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < size; ++s) {
    for (int s2 = 0; s2 < size; ++s2) {
      int shared = 0;
      for (int k = 0; k < deg; ++k) shared += digit[s * deg + k] == digit[s2 * deg + k];
      qp.Q(s, s2) = cfg.rho * shared;
    }
    double lin = 0.0;
    for (int k = 0; k < deg; ++k) lin += target[k][digit[s * deg + k]];
    qp.c[s] = -cfg.rho * lin;
  }
  qp.c[size] = 1.0;

  qp.G = Eigen::MatrixXd::Zero(thetas + size, dim);
  qp.h = Eigen::VectorXd::Zero(thetas + size);
  for (int t = 0; t < thetas; ++t) {
    for (int s = 0; s < size; ++s) qp.G(t, s) = f.psi(s, t);
    qp.G(t, size) = 1.0;
  }
  for (int s = 0; s < size; ++s) qp.G(thetas + s, s) = 1.0;

  // Warm start from the current factor marginal, made feasible.
  Eigen::VectorXd start(dim);
  std::vector<double> previous(state.marginals.factor_marginals[factor]);
  for (double& v : previous) v = std::max(v, 0.0);
  for (int s = 0; s < size; ++s) start[s] = previous[s];
  start[size] = tight_lambda(f, previous) + 1e-12;

  const QpResult sol = solve_qp(qp, start);
  if (sol.status != SolveStatus::kOptimal) {
    throw SolverError("factor " + std::to_string(factor) +
                      ": QP subproblem ended with status " + std::string(to_string(sol.status)));
  }

  FactorUpdate out;
  out.marginal.resize(size);
  for (int s = 0; s < size; ++s) out.marginal[s] = std::max(sol.z[s], 0.0);
  out.lambda = std::max(sol.z[size], tight_lambda(f, out.marginal));
  return out;
}

std::vector<double> variable_update(const FactorGraphInstance& instance, int variable,
                                    const AdmmState& state) {
  const int q = instance.alphabet.size();
  std::vector<double> mean(q, 0.0);
  std::vector<double> local(q);
  int count = 0;
  int edge = 0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    for (int k = 0; k < f.degree(); ++k, ++edge) {
      if (f.neighbors[k] != variable) continue;
      marginalize_onto(state.marginals.factor_marginals[a], k, f.degree(), q, local);
      for (int x = 0; x < q; ++x) mean[x] += local[x] + state.duals[edge][x];
      ++count;
    }
  }
  if (count == 0) return state.marginals.node_marginals[variable];
  for (double& v : mean) v /= count;
  return project_simplex(mean);
}

void dual_update(const FactorGraphInstance& instance, AdmmState& state) {
  const int q = instance.alphabet.size();
  std::vector<double> local(q);
  int edge = 0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    for (int k = 0; k < f.degree(); ++k, ++edge) {
      marginalize_onto(state.marginals.factor_marginals[a], k, f.degree(), q, local);
      const auto& pi = state.marginals.node_marginals[f.neighbors[k]];
      for (int x = 0; x < q; ++x) state.duals[edge][x] += local[x] - pi[x];
    }
  }
}

Residuals residuals(const FactorGraphInstance& instance, const AdmmState& state) {
  const int q = instance.alphabet.size();
  Residuals r;
  std::vector<double> local(q);
  double l1 = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    for (int k = 0; k < f.degree(); ++k) {
      marginalize_onto(state.marginals.factor_marginals[a], k, f.degree(), q, local);
      const auto& pi = state.marginals.node_marginals[f.neighbors[k]];
      for (int x = 0; x < q; ++x) {
        r.values.push_back(pi[x] - local[x]);
        l1 += std::abs(r.values.back());
      }
    }
  }
  r.mean_l1 = r.values.empty() ? 0.0 : l1 / static_cast<double>(r.values.size());
  return r;
}

double engineer_objective(const FactorGraphInstance& instance, const MarginalSet& marginals) {
  double total = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    total -= tight_lambda(instance.factors[a], marginals.factor_marginals[a]);
  }
  return total;
}

void iterate(const FactorGraphInstance& instance, AdmmState& state, const AdmmConfig& cfg) {
  // Factor updates read only p_i and u, so in-place writes are safe.
  for (int a = 0; a < instance.num_factors(); ++a) {
    FactorUpdate up = factor_update(instance, a, state, cfg);
    state.marginals.factor_marginals[a] = std::move(up.marginal);
    state.epigraph[a] = up.lambda;
  }
  std::vector<std::vector<double>> nodes(instance.num_variables);
  for (int i = 0; i < instance.num_variables; ++i) nodes[i] = variable_update(instance, i, state);
  state.marginals.node_marginals = std::move(nodes);
  dual_update(instance, state);
  ++state.iteration;
}

SolveReport solve(const FactorGraphInstance& instance, const AdmmConfig& cfg) {
  require_valid(instance);
  check_config(cfg);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_ms = [&start] {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  AdmmState state = init(instance);
  SolveReport report;
  double previous_cost = 0.0;
  for (double l : state.epigraph) previous_cost += l;

  for (int t = 0; t < cfg.max_iter; ++t) {
    iterate(instance, state, cfg);
    double cost = 0.0;
    for (double l : state.epigraph) cost += l;
    const double j = engineer_objective(instance, state.marginals);
    const double r = residuals(instance, state).mean_l1;
    if (!std::isfinite(cost) || !std::isfinite(j) || !std::isfinite(r)) {
      throw SolverError("non-finite solver state at iteration " + std::to_string(t + 1));
    }
    for (const auto& u : state.duals) {
      if (!all_finite(u)) throw SolverError("non-finite dual at iteration " + std::to_string(t + 1));
    }
    report.internal_cost_trace.push_back(cost);
    report.objective_trace.push_back(j);
    report.residual_trace.push_back(r);
    report.wall_ms_trace.push_back(elapsed_ms());
    report.iterations_used = t + 1;
    if (r <= cfg.primal_tol && std::abs(cost - previous_cost) <= cfg.objective_tol) {
      report.converged = true;
      break;
    }
    previous_cost = cost;
  }
  report.marginals = std::move(state.marginals);
  report.engineer_objective = engineer_objective(instance, report.marginals);
  report.wall_time_ms = elapsed_ms();
  return report;
}

}  // namespace rmp
