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

#ifndef RMP_NUMERICS_HPP_
#define RMP_NUMERICS_HPP_

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rmp {

// Tolerances used by the dense kernels.
namespace tol {
inline constexpr double kSimplexSum = 1e-12;
inline constexpr double kQpStationarity = 1e-8;
inline constexpr double kQpComplementarity = 1e-8;
inline constexpr double kQpFeasibility = 1e-10;
inline constexpr double kLpFeasibility = 1e-9;
inline constexpr double kLpOptimality = 1e-9;
inline constexpr double kQpSymmetry = 1e-12;
}  // namespace tol

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

// Euclidean projection onto {p >= 0, sum p = 1}. Throws std::domain_error on
// empty or non-finite input.
std::vector<double> project_simplex(std::span<const double> v);

// minimize 1/2 z'Qz + c'z  subject to  G z >= h.
struct QpProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  Eigen::MatrixXd G;
  Eigen::VectorXd h;
};

struct QpResult {
  Eigen::VectorXd z;
  Eigen::VectorXd multipliers;  // one per row of G, >= 0 at optimum
  SolveStatus status = SolveStatus::kIterationLimit;
  int iterations = 0;
};

struct QpOptions {
  int max_iterations = 0;  // 0 picks 50 * (d + k)
};

// Primal active-set method for convex (positive semidefinite) QPs. Directions
// of zero curvature are followed until a constraint blocks them, so Q may be
// singular. Without a feasible `initial` point a phase-one LP supplies one.
QpResult solve_qp(const QpProblem& problem, std::optional<Eigen::VectorXd> initial = {},
                  const QpOptions& options = {});

struct KktResiduals {
  double stationarity = 0.0;     // ||Qz + c - G'mu||_inf
  double complementarity = 0.0;  // max_j |mu_j (G_j z - h_j)|
  double feasibility = 0.0;      // max_j max(0, h_j - G_j z)
  double dual_feasibility = 0.0; // max_j max(0, -mu_j)
};

KktResiduals qp_kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& z,
                              const Eigen::VectorXd& multipliers);

// minimize c'z  subject to  A_eq z = b_eq,  A_ineq z >= b_ineq,  z >= lower.
// An empty `lower` leaves every variable free; -infinity entries mark
// individual free variables.
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_ineq;
  Eigen::VectorXd b_ineq;
  std::vector<double> lower;
};

inline constexpr double kFree = -std::numeric_limits<double>::infinity();

struct LpResult {
  Eigen::VectorXd z;
  double value = 0.0;
  // Dual of max b_eq'y_eq + b_ineq'y_ineq + lower'r  s.t.
  // A_eq'y_eq + A_ineq'y_ineq + r = c,  y_ineq >= 0,  r >= 0 (r = 0 on free
  // variables).
  Eigen::VectorXd duals_eq;
  Eigen::VectorXd duals_ineq;
  Eigen::VectorXd reduced_costs;
  SolveStatus status = SolveStatus::kIterationLimit;
  int iterations = 0;
};

struct LpOptions {
  int max_iterations = 0;  // 0 picks 50 * (rows + columns)
  int refactor_interval = 64;
};

// Dense two-phase revised simplex. Pricing is Dantzig's rule; after a run of
// degenerate pivots it switches to Bland's rule until the objective moves
// again, which rules out cycling.
LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace rmp

#endif  // RMP_NUMERICS_HPP_
