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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rmp/numerics.hpp"

namespace rmp {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_qp(const QpProblem& p) {
  const auto d = p.Q.rows();
  auto bad = [](const char* what) { throw std::invalid_argument(std::string("solve_qp: ") + what); };
  if (p.Q.cols() != d || p.c.size() != d) bad("Q/c dimension mismatch");
  if (p.G.rows() != p.h.size()) bad("G/h row mismatch");
  if (p.G.rows() > 0 && p.G.cols() != d) bad("G column mismatch");
  if (!p.Q.allFinite() || !p.c.allFinite() || !p.G.allFinite() || !p.h.allFinite()) {
    bad("non-finite entries");
  }
  if (d > 0 && (p.Q - p.Q.transpose()).cwiseAbs().maxCoeff() > tol::kQpSymmetry) bad("Q not symmetric");
}

double max_violation(const QpProblem& p, const VectorXd& z) {
  if (p.G.rows() == 0) return 0.0;
  return std::max(0.0, (p.h - p.G * z).maxCoeff());
}

}  // namespace

KktResiduals qp_kkt_residuals(const QpProblem& problem, const VectorXd& z,
                              const VectorXd& multipliers) {
  KktResiduals out;
  VectorXd grad = problem.Q * z + problem.c;
  if (problem.G.rows() > 0) grad -= problem.G.transpose() * multipliers;
  out.stationarity = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < problem.G.rows(); ++j) {
    const double slack = problem.G.row(j).dot(z) - problem.h[j];
    out.complementarity = std::max(out.complementarity, std::abs(multipliers[j] * slack));
    out.feasibility = std::max(out.feasibility, -slack);
    out.dual_feasibility = std::max(out.dual_feasibility, -multipliers[j]);
  }
  return out;
}

QpResult solve_qp(const QpProblem& problem, std::optional<VectorXd> initial,
                  const QpOptions& options) {
  check_qp(problem);
  const int d = static_cast<int>(problem.Q.rows());
  const int k = static_cast<int>(problem.G.rows());
  const int max_iterations = options.max_iterations > 0 ? options.max_iterations : 50 * (d + k);

  QpResult result;
  result.multipliers = VectorXd::Zero(k);

  VectorXd x;
  if (initial && initial->size() == d && initial->allFinite() &&
      max_violation(problem, *initial) <= tol::kQpFeasibility) {
    x = *initial;
  } else {
    LpProblem phase_one;
    phase_one.c = VectorXd::Zero(d);
    phase_one.A_ineq = problem.G;
    phase_one.b_ineq = problem.h;
    phase_one.A_eq.resize(0, d);
    phase_one.b_eq.resize(0);
    LpResult lp = solve_lp(phase_one);
    if (lp.status != SolveStatus::kOptimal) {
      result.status = lp.status == SolveStatus::kInfeasible ? SolveStatus::kInfeasible : lp.status;
      result.z = initial && initial->size() == d ? *initial : VectorXd::Zero(d);
      return result;
    }
    x = lp.z;
  }

  std::vector<int> working;
  std::vector<char> in_working(k, 0);

  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    const VectorXd g = problem.Q * x + problem.c;
    const double gnorm = std::max(1.0, g.norm());

    // Orthonormal bases for range(A_W') and its complement.
    const int w = static_cast<int>(working.size());
    MatrixXd aw(w, d);
    for (int r = 0; r < w; ++r) aw.row(r) = problem.G.row(working[r]);
    MatrixXd range_basis(d, w);
    MatrixXd null_basis;
    Eigen::HouseholderQR<MatrixXd> qr;
    if (w == 0) {
      null_basis = MatrixXd::Identity(d, d);
    } else {
      qr.compute(aw.transpose());
      const MatrixXd q_full = qr.householderQ() * MatrixXd::Identity(d, d);
      range_basis = q_full.leftCols(w);
      null_basis = q_full.rightCols(d - w);
    }

    VectorXd step = VectorXd::Zero(d);
    bool ray = false;
    if (null_basis.cols() > 0) {
      const MatrixXd reduced_hessian = null_basis.transpose() * problem.Q * null_basis;
      const VectorXd reduced_grad = null_basis.transpose() * g;
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(reduced_hessian);
      const VectorXd& evals = eig.eigenvalues();
      const MatrixXd& evecs = eig.eigenvectors();
      const double curvature_floor = 1e-11 * std::max(1.0, evals.cwiseAbs().maxCoeff());
      const VectorXd coeffs = evecs.transpose() * reduced_grad;
      VectorXd flat = VectorXd::Zero(reduced_grad.size());
      VectorXd newton = VectorXd::Zero(reduced_grad.size());
      for (Eigen::Index e = 0; e < evals.size(); ++e) {
        if (evals[e] <= curvature_floor) {
          flat += coeffs[e] * evecs.col(e);
        } else {
          newton -= (coeffs[e] / evals[e]) * evecs.col(e);
        }
      }
      if (flat.norm() > 1e-12 * gnorm) {
        // Zero-curvature descent: the objective falls linearly until blocked.
        ray = true;
        step = -(null_basis * flat);
      } else {
        step = null_basis * newton;
      }
    }

    if (!ray && step.norm() <= 1e-12 * (1.0 + x.norm())) {
      if (w == 0) {
        result.status = SolveStatus::kOptimal;
        break;
      }
      // Least-squares multipliers from A_W' mu = g.
      const MatrixXd r_factor =
          qr.matrixQR().topLeftCorner(w, w).triangularView<Eigen::Upper>();
      const VectorXd mu = r_factor.triangularView<Eigen::Upper>().solve(range_basis.transpose() * g);
      int drop = -1;
      double most_negative = -1e-11 * gnorm;
      for (int r = 0; r < w; ++r) {
        if (mu[r] < most_negative) {
          most_negative = mu[r];
          drop = r;
        }
      }
      if (drop < 0) {
        for (int r = 0; r < w; ++r) result.multipliers[working[r]] = std::max(mu[r], 0.0);
        result.status = SolveStatus::kOptimal;
        break;
      }
      in_working[working[drop]] = 0;
      working.erase(working.begin() + drop);
      continue;
    }

    double alpha = ray ? std::numeric_limits<double>::infinity() : 1.0;
    int block = -1;
    const double step_norm = step.norm();
    for (int j = 0; j < k; ++j) {
      if (in_working[j]) continue;
      const double rate = problem.G.row(j).dot(step);
      if (rate >= -1e-14 * problem.G.row(j).norm() * step_norm) continue;
      const double slack = std::max(problem.G.row(j).dot(x) - problem.h[j], 0.0);
      const double limit = slack / -rate;
      if (limit < alpha) {
        alpha = limit;
        block = j;
      }
    }
    if (block < 0 && ray) {
      result.status = SolveStatus::kUnbounded;
      break;
    }
    x += alpha * step;
    if (block >= 0) {
      in_working[block] = 1;
      working.push_back(block);
    }
  }

  result.z = x;
  return result;
}

}  // namespace rmp
