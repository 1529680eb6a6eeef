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

#ifndef RMP_ROBUST_MP_HPP_
#define RMP_ROBUST_MP_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "rmp/graph.hpp"
#include "rmp/marginals.hpp"

namespace rmp {

// Robust max-product: ADMM on the epigraph form of the local-polytope
// relaxation
//
//   minimize  sum_a lambda_a
//   s.t.      lambda_a + <p_a, psi_a(.; theta)> >= 0   for all a, theta
//             p_a >= 0,  p_i in the simplex,
//             M_ai p_a = p_i                             for all (a, i)
//
// where M_ai sums p_a over every neighbour but i. The consensus constraints
// are dualised with scaled duals u_ai and penalty (rho/2)||M_ai p_a - p_i||^2:
//
//   factor step:   (p_a, lambda_a) = argmin lambda_a
//                      + rho/2 sum_i ||M_ai p_a - (p_i - u_ai)||^2
//   variable step: p_i = Proj_simplex(mean_{a in di} (M_ai p_a + u_ai))
//   dual step:     u_ai += M_ai p_a - p_i

struct AdmmConfig {
  double rho = 1.0;
  int max_iter = 100;
  double primal_tol = 1e-6;
  double objective_tol = 1e-8;
};

// Throws std::invalid_argument when a field breaks its invariant.
void check_config(const AdmmConfig& cfg);

struct AdmmState {
  MarginalSet marginals;
  std::vector<std::vector<double>> duals;  // per edge (factor-major), per label
  std::vector<double> epigraph;            // lambda_a
  int iteration = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactorUpdate {
  std::vector<double> marginal;
  double lambda = 0.0;
};

struct Residuals {
  std::vector<double> values;  // r_ai(x) = p_i(x) - (M_ai p_a)(x), edge-major
  double mean_l1 = 0.0;        // ||r||_1 / (|E| |X|)
};

struct SolveReport {
  MarginalSet marginals;
  double engineer_objective = 0.0;
  std::vector<double> internal_cost_trace;  // C(t) = sum_a lambda_a
  std::vector<double> objective_trace;      // J(t)
  std::vector<double> residual_trace;       // mean l1 residual
  std::vector<double> wall_ms_trace;        // elapsed time at the end of each iteration
  int iterations_used = 0;
  bool converged = false;
  double wall_time_ms = 0.0;
};

AdmmState init(const FactorGraphInstance& instance);

FactorUpdate factor_update(const FactorGraphInstance& instance, int factor, const AdmmState& state,
                           const AdmmConfig& cfg);

std::vector<double> variable_update(const FactorGraphInstance& instance, int variable,
                                    const AdmmState& state);

void dual_update(const FactorGraphInstance& instance, AdmmState& state);

Residuals residuals(const FactorGraphInstance& instance, const AdmmState& state);

// J = sum_a min_theta <p_a, psi_a(.; theta)> on the given factor marginals.
double engineer_objective(const FactorGraphInstance& instance, const MarginalSet& marginals);

// Runs one full factor / variable / dual sweep in place.
void iterate(const FactorGraphInstance& instance, AdmmState& state, const AdmmConfig& cfg);

SolveReport solve(const FactorGraphInstance& instance, const AdmmConfig& cfg);

}  // namespace rmp

#endif  // RMP_ROBUST_MP_HPP_
