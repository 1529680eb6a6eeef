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

#ifndef RMP_GAME_EVAL_HPP_
#define RMP_GAME_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "rmp/graph.hpp"
#include "rmp/marginals.hpp"
#include "rmp/numerics.hpp"

namespace rmp {

// Product strategy for Nature: q[a] is a distribution over factors[a].thetas.
struct NatureStrategy {
  std::vector<std::vector<double>> q;
};

// The Engineer's mixed strategy in marginal form, optionally remembering the
// pure assignment it came from.
struct EngineerStrategy {
  MarginalSet marginals;
  std::optional<std::vector<int>> pure;

  static EngineerStrategy from_assignment(const FactorGraphInstance& instance,
                                          const std::vector<int>& x);
};

// sum_a sum_theta q_a(theta) sum_x p_a(x) psi_a(x; theta).
// Throws std::domain_error on shape mismatch.
double expected_payoff(const FactorGraphInstance& instance, const EngineerStrategy& p,
                       const NatureStrategy& q);

// Payoff of one realised assignment x against the mixed q.
double instantiation_payoff(const FactorGraphInstance& instance, const std::vector<int>& x,
                            const NatureStrategy& q);

// Per-factor argmin of the expected potential, ties to the lowest index.
NatureStrategy nature_best_response(const FactorGraphInstance& instance, const EngineerStrategy& p);

// q_a <- (1 - alpha) q_a + alpha / |Theta_a|. Throws std::domain_error for
// alpha outside [0, 1].
NatureStrategy mix_with_uniform(const NatureStrategy& q, double alpha);

NatureStrategy uniform_nature(const FactorGraphInstance& instance);

// Exact draw from the tree MRF with the given (locally consistent) marginals.
// The tree is rooted at variable 0; each factor entered from a parent
// variable draws its remaining neighbours from the slice of p_a at the
// parent's value. Throws std::domain_error for non-trees or empty slices.
std::vector<int> sample_tree_mrf(const FactorGraphInstance& instance, const EngineerStrategy& p,
                                 std::uint64_t seed);

// Largest instance (|X|^n) exact_minimax_joint accepts.
inline constexpr std::size_t kJointOracleCap = std::size_t{1} << 14;

struct JointMinimaxResult {
  double value = 0.0;
  std::vector<double> joint;  // over X^V, variable 0 most significant
  NatureStrategy nature;      // equilibrium strategy read off the LP duals
  SolveStatus status = SolveStatus::kIterationLimit;
};

// Game value over the full joint simplex. Throws std::domain_error above
// kJointOracleCap.
JointMinimaxResult exact_minimax_joint(const FactorGraphInstance& instance);

// Factor and node marginals of a joint distribution over X^V.
MarginalSet marginals_from_joint(const FactorGraphInstance& instance,
                                 const std::vector<double>& joint);

struct LocLpResult {
  double value = 0.0;
  MarginalSet marginals;
  NatureStrategy nature;
  SolveStatus status = SolveStatus::kIterationLimit;
};

// Rows and columns of the local-polytope LP, used to decide whether an
// instance is small enough for the oracle.
struct LocLpSize {
  int rows = 0;
  int columns = 0;
};
LocLpSize loc_lp_size(const FactorGraphInstance& instance);

// Local-polytope relaxation solved exactly as an LP.
LocLpResult loc_lp(const FactorGraphInstance& instance);

}  // namespace rmp

#endif  // RMP_GAME_EVAL_HPP_
