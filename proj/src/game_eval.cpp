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

#include "rmp/game_eval.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "rmp/rng.hpp"

namespace rmp {
namespace {

void check_nature(const FactorGraphInstance& instance, const NatureStrategy& q) {
  if (static_cast<int>(q.q.size()) != instance.num_factors()) {
    throw std::domain_error("nature strategy: wrong number of factors");
  }
  for (int a = 0; a < instance.num_factors(); ++a) {
    if (static_cast<int>(q.q[a].size()) != instance.factors[a].num_thetas()) {
      throw std::domain_error("nature strategy: factor " + std::to_string(a) + " has wrong size");
    }
  }
}

double factor_expectation(const Factor& f, const std::vector<double>& p_a, int theta) {
  double v = 0.0;
  for (std::size_t s = 0; s < p_a.size(); ++s) v += p_a[s] * f.psi(s, theta);
  return v;
}

// Normalised, non-negative copy of an LP dual block.
std::vector<double> as_distribution(std::vector<double> w) {
  double total = 0.0;
  for (double& v : w) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
  } else {
    for (double& v : w) v /= total;
  }
  return w;
}

}  // namespace

EngineerStrategy EngineerStrategy::from_assignment(const FactorGraphInstance& instance,
                                                   const std::vector<int>& x) {
  return {delta_marginals(instance, x), x};
}

double expected_payoff(const FactorGraphInstance& instance, const EngineerStrategy& p,
                       const NatureStrategy& q) {
  check_shapes(instance, p.marginals);
  check_nature(instance, q);
  double total = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    for (int t = 0; t < f.num_thetas(); ++t) {
      if (q.q[a][t] == 0.0) continue;
      total += q.q[a][t] * factor_expectation(f, p.marginals.factor_marginals[a], t);
    }
  }
  return total;
}

double instantiation_payoff(const FactorGraphInstance& instance, const std::vector<int>& x,
                            const NatureStrategy& q) {
  check_nature(instance, q);
  if (static_cast<int>(x.size()) != instance.num_variables) {
    throw std::domain_error("instantiation_payoff: assignment has wrong length");
  }
  const int alphabet = instance.alphabet.size();
  double total = 0.0;
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    const std::size_t s = local_assignment(f, x, alphabet);
    for (int t = 0; t < f.num_thetas(); ++t) total += q.q[a][t] * f.psi(s, t);
  }
  return total;
}

NatureStrategy nature_best_response(const FactorGraphInstance& instance, const EngineerStrategy& p) {
  check_shapes(instance, p.marginals);
  NatureStrategy out;
  out.q.reserve(instance.factors.size());
  for (int a = 0; a < instance.num_factors(); ++a) {
    const Factor& f = instance.factors[a];
    int best = 0;
    double best_value = factor_expectation(f, p.marginals.factor_marginals[a], 0);
    for (int t = 1; t < f.num_thetas(); ++t) {
      const double v = factor_expectation(f, p.marginals.factor_marginals[a], t);
      if (v < best_value) {
        best_value = v;
        best = t;
      }
    }
    std::vector<double> point(f.num_thetas(), 0.0);
    point[best] = 1.0;
    out.q.push_back(std::move(point));
  }
  return out;
}

NatureStrategy mix_with_uniform(const NatureStrategy& q, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::domain_error("mix_with_uniform: alpha outside [0, 1]");
  NatureStrategy out = q;
  for (auto& qa : out.q) {
    const double uniform = 1.0 / static_cast<double>(qa.size());
    for (double& v : qa) v = (1.0 - alpha) * v + alpha * uniform;
  }
  return out;
}

NatureStrategy uniform_nature(const FactorGraphInstance& instance) {
  NatureStrategy out;
  for (const Factor& f : instance.factors) {
    out.q.emplace_back(f.num_thetas(), 1.0 / f.num_thetas());
  }
  return out;
}

std::vector<int> sample_tree_mrf(const FactorGraphInstance& instance, const EngineerStrategy& p,
                                 std::uint64_t seed) {
  if (!is_tree(instance)) throw std::domain_error("sample_tree_mrf: instance is not a tree");
  check_shapes(instance, p.marginals);
  const int alphabet = instance.alphabet.size();
  const Adjacency adj = build_adjacency(instance);
  Rng rng(seed);

  auto draw = [&rng](const std::vector<double>& weights, const std::vector<std::size_t>& support,
                     const char* what) {
    double total = 0.0;
    for (std::size_t s : support) total += std::max(weights[s], 0.0);
    if (!(total > 1e-12)) {
      throw std::domain_error(std::string("sample_tree_mrf: zero-probability ") + what);
    }
    const double u = rng.uniform01() * total;
    double cumulative = 0.0;
    std::size_t last_positive = support.front();
    for (std::size_t s : support) {
      const double w = std::max(weights[s], 0.0);
      if (w <= 0.0) continue;
      cumulative += w;
      last_positive = s;
      if (u < cumulative) return s;
    }
    return last_positive;
  };

  std::vector<int> x(instance.num_variables, -1);
  std::vector<char> factor_done(instance.num_factors(), 0);
  std::vector<std::size_t> all_labels(alphabet);
  for (int v = 0; v < alphabet; ++v) all_labels[v] = v;
  x[0] = static_cast<int>(draw(p.marginals.node_marginals[0], all_labels, "root marginal"));

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop_front();
    for (const EdgeRef& e : adj.variable_edges[i]) {
      if (factor_done[e.factor]) continue;
      factor_done[e.factor] = 1;
      const Factor& f = instance.factors[e.factor];
      const auto& table = p.marginals.factor_marginals[e.factor];
      std::vector<std::size_t> slice;
      for (std::size_t s = 0; s < table.size(); ++s) {
        if (assignment_digit(s, e.position, f.degree(), alphabet) == x[i]) slice.push_back(s);
      }
      const std::size_t s = draw(table, slice, "conditioning slice");
      for (int k = 0; k < f.degree(); ++k) {
        if (k == e.position) continue;
        const int j = f.neighbors[k];
        x[j] = assignment_digit(s, k, f.degree(), alphabet);
        frontier.push_back(j);
      }
    }
  }
  return x;
}

MarginalSet marginals_from_joint(const FactorGraphInstance& instance,
                                 const std::vector<double>& joint) {
  const int alphabet = instance.alphabet.size();
  const int n = instance.num_variables;
  MarginalSet m;
  m.node_marginals.assign(n, std::vector<double>(alphabet, 0.0));
  for (const Factor& f : instance.factors) m.factor_marginals.emplace_back(num_assignments(instance, f), 0.0);
  std::vector<int> x(n, 0);
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    std::size_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      x[i] = static_cast<int>(rest % alphabet);
      rest /= alphabet;
    }
    const double w = joint[idx];
    if (w == 0.0) continue;
    for (int i = 0; i < n; ++i) m.node_marginals[i][x[i]] += w;
    for (int a = 0; a < instance.num_factors(); ++a) {
      m.factor_marginals[a][local_assignment(instance.factors[a], x, alphabet)] += w;
    }
  }
  return m;
}

JointMinimaxResult exact_minimax_joint(const FactorGraphInstance& instance) {
  require_valid(instance);
  const int alphabet = instance.alphabet.size();
  const int n = instance.num_variables;
  const int m = instance.num_factors();
  std::size_t joint_size = 0;
  try {
    joint_size = int_pow(alphabet, n);
  } catch (const std::overflow_error&) {
    joint_size = kJointOracleCap + 1;
  }
  if (joint_size > kJointOracleCap) {
    throw std::domain_error("exact_minimax_joint: |X|^n exceeds the oracle cap");
  }
  const int cols = static_cast<int>(joint_size) + m;
  int rows = 0;
  std::vector<int> row_of(m);
  for (int a = 0; a < m; ++a) {
    row_of[a] = rows;
    rows += instance.factors[a].num_thetas();
  }

  LpProblem lp;
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.c.tail(m).setConstant(-1.0);
  lp.lower.assign(cols, 0.0);
  for (int a = 0; a < m; ++a) lp.lower[joint_size + a] = kFree;
  lp.A_eq = Eigen::MatrixXd::Zero(1, cols);
  lp.A_eq.row(0).head(joint_size).setOnes();
  lp.b_eq = Eigen::VectorXd::Ones(1);
  lp.A_ineq = Eigen::MatrixXd::Zero(rows, cols);
  lp.b_ineq = Eigen::VectorXd::Zero(rows);

  std::vector<int> x(n, 0);
  for (std::size_t idx = 0; idx < joint_size; ++idx) {
    std::size_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      x[i] = static_cast<int>(rest % alphabet);
      rest /= alphabet;
    }
    for (int a = 0; a < m; ++a) {
      const Factor& f = instance.factors[a];
      const std::size_t s = local_assignment(f, x, alphabet);
      for (int t = 0; t < f.num_thetas(); ++t) lp.A_ineq(row_of[a] + t, idx) = f.psi(s, t);
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int t = 0; t < instance.factors[a].num_thetas(); ++t) {
      lp.A_ineq(row_of[a] + t, joint_size + a) = -1.0;
    }
  }

  const LpResult sol = solve_lp(lp);
  JointMinimaxResult out;
  out.status = sol.status;
  if (sol.status != SolveStatus::kOptimal) return out;
  out.value = -sol.value;
  out.joint.assign(sol.z.data(), sol.z.data() + joint_size);
  for (int a = 0; a < m; ++a) {
    const int k = instance.factors[a].num_thetas();
    out.nature.q.push_back(
        as_distribution(std::vector<double>(sol.duals_ineq.data() + row_of[a],
                                            sol.duals_ineq.data() + row_of[a] + k)));
  }
  return out;
}

LocLpSize loc_lp_size(const FactorGraphInstance& instance) {
  const int alphabet = instance.alphabet.size();
  LocLpSize size;
  for (const Factor& f : instance.factors) {
    size.rows += f.degree() * alphabet + f.num_thetas();
    size.columns += static_cast<int>(num_assignments(instance, f)) + 1;
  }
  size.rows += instance.num_variables;
  size.columns += instance.num_variables * alphabet;
  return size;
}

LocLpResult loc_lp(const FactorGraphInstance& instance) {
  require_valid(instance);
  const int alphabet = instance.alphabet.size();
  const int n = instance.num_variables;
  const int m = instance.num_factors();

  // Columns: [p_a blocks][p_i blocks][lambda_a].
  std::vector<int> factor_col(m);
  int cols = 0;
  for (int a = 0; a < m; ++a) {
    factor_col[a] = cols;
    cols += static_cast<int>(num_assignments(instance, instance.factors[a]));
  }
  const int node_col = cols;
  cols += n * alphabet;
  const int lambda_col = cols;
  cols += m;

  int edge_rows = 0;
  int theta_rows = 0;
  for (const Factor& f : instance.factors) {
    edge_rows += f.degree() * alphabet;
    theta_rows += f.num_thetas();
  }

  LpProblem lp;
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.c.tail(m).setConstant(-1.0);
  lp.lower.assign(cols, 0.0);
  for (int a = 0; a < m; ++a) lp.lower[lambda_col + a] = kFree;
  lp.A_eq = Eigen::MatrixXd::Zero(edge_rows + n, cols);
  lp.b_eq = Eigen::VectorXd::Zero(edge_rows + n);
  lp.A_ineq = Eigen::MatrixXd::Zero(theta_rows, cols);
  lp.b_ineq = Eigen::VectorXd::Zero(theta_rows);

  int row = 0;
  int theta_row = 0;
  std::vector<int> nature_row(m);
  for (int a = 0; a < m; ++a) {
    const Factor& f = instance.factors[a];
    const int size = static_cast<int>(num_assignments(instance, f));
    for (int k = 0; k < f.degree(); ++k) {
      for (int x = 0; x < alphabet; ++x, ++row) {
        for (int s = 0; s < size; ++s) {
          if (assignment_digit(s, k, f.degree(), alphabet) == x) lp.A_eq(row, factor_col[a] + s) = 1.0;
        }
        lp.A_eq(row, node_col + f.neighbors[k] * alphabet + x) = -1.0;
      }
    }
    nature_row[a] = theta_row;
    for (int t = 0; t < f.num_thetas(); ++t, ++theta_row) {
      for (int s = 0; s < size; ++s) lp.A_ineq(theta_row, factor_col[a] + s) = f.psi(s, t);
      lp.A_ineq(theta_row, lambda_col + a) = -1.0;
    }
  }
  for (int i = 0; i < n; ++i, ++row) {
    for (int x = 0; x < alphabet; ++x) lp.A_eq(row, node_col + i * alphabet + x) = 1.0;
    lp.b_eq[row] = 1.0;
  }

  const LpResult sol = solve_lp(lp);
  LocLpResult out;
  out.status = sol.status;
  if (sol.status != SolveStatus::kOptimal) return out;
  out.value = -sol.value;
  for (int a = 0; a < m; ++a) {
    const int size = static_cast<int>(num_assignments(instance, instance.factors[a]));
    std::vector<double> pa(sol.z.data() + factor_col[a], sol.z.data() + factor_col[a] + size);
    for (double& v : pa) v = std::max(v, 0.0);
    out.marginals.factor_marginals.push_back(std::move(pa));
    const int k = instance.factors[a].num_thetas();
    out.nature.q.push_back(as_distribution(std::vector<double>(
        sol.duals_ineq.data() + nature_row[a], sol.duals_ineq.data() + nature_row[a] + k)));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> pi(sol.z.data() + node_col + i * alphabet,
                           sol.z.data() + node_col + (i + 1) * alphabet);
    for (double& v : pi) v = std::max(v, 0.0);
    out.marginals.node_marginals.push_back(std::move(pi));
  }
  return out;
}

}  // namespace rmp
