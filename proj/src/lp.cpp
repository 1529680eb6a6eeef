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

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr int kDegenerateRunBeforeBland = 50;

// Equality-form problem  min cost'x  s.t.  A x = b,  x >= 0,  b >= 0, with an
// identity block of artificial columns appended at [first_artificial, end).
class RevisedSimplex {
 public:
  RevisedSimplex(MatrixXd A, VectorXd b, int first_artificial, const LpOptions& options)
      : A_(std::move(A)),
        b_(std::move(b)),
        rows_(static_cast<int>(A_.rows())),
        cols_(static_cast<int>(A_.cols())),
        first_artificial_(first_artificial),
        options_(options) {
    basis_.resize(rows_);
    for (int r = 0; r < rows_; ++r) basis_[r] = first_artificial_ + r;
    is_basic_.assign(cols_, 0);
    for (int j : basis_) is_basic_[j] = 1;
    binv_ = MatrixXd::Identity(rows_, rows_);
    xb_ = b_;
    max_iterations_ = options.max_iterations > 0 ? options.max_iterations : 50 * (rows_ + cols_);
    refactor_interval_ = std::max(options.refactor_interval, rows_ / 4);
  }

  // Runs simplex pivots for `cost`; artificial columns never enter when
  // `allow_artificial` is false.
  SolveStatus optimize(const VectorXd& cost, bool allow_artificial) {
    const int enter_limit = allow_artificial ? cols_ : first_artificial_;
    int degenerate_run = 0;
    while (true) {
      if (iterations_ >= max_iterations_) return SolveStatus::kIterationLimit;
      VectorXd cb(rows_);
      for (int r = 0; r < rows_; ++r) cb[r] = cost[basis_[r]];
      const VectorXd y = binv_.transpose() * cb;
      const VectorXd reduced = cost.head(enter_limit) - A_.leftCols(enter_limit).transpose() * y;

      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      int entering = -1;
      double best = -tol::kLpOptimality;
      for (int j = 0; j < enter_limit; ++j) {
        if (is_basic_[j] || reduced[j] >= best) continue;
        entering = j;
        if (bland) break;
        best = reduced[j];
      }
      if (entering < 0) return SolveStatus::kOptimal;

      const VectorXd w = binv_ * A_.col(entering);
      int leave = -1;
      double step = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        if (w[r] <= kPivotTol) continue;
        const double ratio = std::max(xb_[r], 0.0) / w[r];
        if (leave < 0 || ratio < step - 1e-12 * (1.0 + step)) {
          step = ratio;
          leave = r;
        } else if (ratio <= step + 1e-12 * (1.0 + step) && basis_[r] < basis_[leave]) {
          step = std::min(step, ratio);
          leave = r;
        }
      }
      if (leave < 0) return SolveStatus::kUnbounded;

      pivot(leave, entering, w, step);
      degenerate_run = step <= kDegenerateStep ? degenerate_run + 1 : 0;
    }
  }

  // Swaps zero-level artificials out of the basis where a structural column
  // can replace them; rows where none can are linearly redundant.
  void drive_out_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      const Eigen::RowVectorXd row = binv_.row(r) * A_.leftCols(first_artificial_);
      int best = -1;
      double best_abs = kPivotTol;
      for (int j = 0; j < first_artificial_; ++j) {
        if (is_basic_[j]) continue;
        if (std::abs(row[j]) > best_abs) {
          best_abs = std::abs(row[j]);
          best = j;
        }
      }
      if (best < 0) continue;
      const VectorXd w = binv_ * A_.col(best);
      pivot(r, best, w, xb_[r] / w[r]);
    }
  }

  void refactor() {
    MatrixXd basis_matrix(rows_, rows_);
    for (int r = 0; r < rows_; ++r) basis_matrix.col(r) = A_.col(basis_[r]);
    binv_ = basis_matrix.partialPivLu().inverse();
    xb_ = binv_ * b_;
    since_refactor_ = 0;
  }

  double objective(const VectorXd& cost) const {
    double v = 0.0;
    for (int r = 0; r < rows_; ++r) v += cost[basis_[r]] * xb_[r];
    return v;
  }

  VectorXd primal() const {
    VectorXd x = VectorXd::Zero(cols_);
    for (int r = 0; r < rows_; ++r) x[basis_[r]] = std::max(xb_[r], 0.0);
    return x;
  }

  VectorXd duals(const VectorXd& cost) const {
    VectorXd cb(rows_);
    for (int r = 0; r < rows_; ++r) cb[r] = cost[basis_[r]];
    return binv_.transpose() * cb;
  }

  int iterations() const { return iterations_; }

 private:
  void pivot(int leave, int entering, const VectorXd& w, double step) {
    xb_ -= step * w;
    xb_[leave] = step;
    is_basic_[basis_[leave]] = 0;
    is_basic_[entering] = 1;
    basis_[leave] = entering;
    const double pivot_value = w[leave];
    binv_.row(leave) /= pivot_value;
    for (int r = 0; r < rows_; ++r) {
      if (r != leave && w[r] != 0.0) binv_.row(r) -= w[r] * binv_.row(leave);
    }
    ++iterations_;
    if (++since_refactor_ >= refactor_interval_) refactor();
  }

  MatrixXd A_;
  VectorXd b_;
  int rows_;
  int cols_;
  int first_artificial_;
  LpOptions options_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  MatrixXd binv_;
  VectorXd xb_;
  int iterations_ = 0;
  int max_iterations_ = 0;
  int refactor_interval_ = 64;
  int since_refactor_ = 0;
};

void check_dimensions(const LpProblem& p) {
  const auto n = p.c.size();
  auto bad = [](const char* what) { throw std::invalid_argument(std::string("solve_lp: ") + what); };
  if (p.A_eq.rows() != p.b_eq.size()) bad("A_eq/b_eq row mismatch");
  if (p.A_ineq.rows() != p.b_ineq.size()) bad("A_ineq/b_ineq row mismatch");
  if (p.A_eq.rows() > 0 && p.A_eq.cols() != n) bad("A_eq column mismatch");
  if (p.A_ineq.rows() > 0 && p.A_ineq.cols() != n) bad("A_ineq column mismatch");
  if (!p.lower.empty() && static_cast<Eigen::Index>(p.lower.size()) != n) bad("lower size mismatch");
  if (!p.c.allFinite() || !p.A_eq.allFinite() || !p.b_eq.allFinite() || !p.A_ineq.allFinite() ||
      !p.b_ineq.allFinite()) {
    bad("non-finite entries");
  }
  for (double l : p.lower) {
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) bad("invalid lower bound");
  }
}

}  // namespace

LpResult solve_lp(const LpProblem& problem, const LpOptions& options) {
  check_dimensions(problem);
  const int n = static_cast<int>(problem.c.size());
  const int m_eq = static_cast<int>(problem.A_eq.rows());
  const int m_in = static_cast<int>(problem.A_ineq.rows());
  const int rows = m_eq + m_in;

  auto lower_of = [&](int j) { return problem.lower.empty() ? kFree : problem.lower[j]; };

  // Column layout: shifted bounded variables or (plus, minus) pairs for free
  // ones, then one surplus per inequality row, then artificials.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (std::isinf(lower_of(j))) neg_col[j] = cols++;
  }
  const int first_surplus = cols;
  cols += m_in;
  const int first_artificial = cols;
  cols += rows;

  MatrixXd A = MatrixXd::Zero(rows, cols);
  VectorXd b(rows);
  VectorXd shift = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    if (!std::isinf(lower_of(j))) shift[j] = lower_of(j);
  }
  auto fill_row = [&](int r, const Eigen::RowVectorXd& coeffs, double rhs) {
    for (int j = 0; j < n; ++j) {
      A(r, pos_col[j]) = coeffs[j];
      if (neg_col[j] >= 0) A(r, neg_col[j]) = -coeffs[j];
    }
    b[r] = rhs - coeffs.dot(shift);
  };
  for (int r = 0; r < m_eq; ++r) fill_row(r, problem.A_eq.row(r), problem.b_eq[r]);
  for (int r = 0; r < m_in; ++r) {
    fill_row(m_eq + r, problem.A_ineq.row(r), problem.b_ineq[r]);
    A(m_eq + r, first_surplus + r) = -1.0;
  }
  std::vector<double> row_sign(rows, 1.0);
  for (int r = 0; r < rows; ++r) {
    if (b[r] < 0.0) {
      row_sign[r] = -1.0;
      A.row(r) *= -1.0;
      b[r] = -b[r];
    }
    A(r, first_artificial + r) = 1.0;
  }

  VectorXd cost = VectorXd::Zero(cols);
  for (int j = 0; j < n; ++j) {
    cost[pos_col[j]] = problem.c[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -problem.c[j];
  }

  LpResult result;
  result.z = VectorXd::Zero(n);
  RevisedSimplex simplex(A, b, first_artificial, options);

  VectorXd phase_one = VectorXd::Zero(cols);
  phase_one.tail(rows).setOnes();
  SolveStatus status = simplex.optimize(phase_one, true);
  if (status == SolveStatus::kIterationLimit) {
    result.status = status;
    result.iterations = simplex.iterations();
    return result;
  }
  simplex.refactor();
  const double scale = 1.0 + (b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0);
  if (simplex.objective(phase_one) > tol::kLpFeasibility * scale) {
    result.status = SolveStatus::kInfeasible;
    result.iterations = simplex.iterations();
    return result;
  }
  simplex.drive_out_artificials();

  status = simplex.optimize(cost, false);
  result.iterations = simplex.iterations();
  result.status = status;
  if (status != SolveStatus::kOptimal) return result;

  simplex.refactor();
  const VectorXd x = simplex.primal();
  for (int j = 0; j < n; ++j) {
    result.z[j] = shift[j] + x[pos_col[j]] - (neg_col[j] >= 0 ? x[neg_col[j]] : 0.0);
  }
  result.value = problem.c.dot(result.z);

  const VectorXd y = simplex.duals(cost);
  result.duals_eq.resize(m_eq);
  result.duals_ineq.resize(m_in);
  for (int r = 0; r < m_eq; ++r) result.duals_eq[r] = row_sign[r] * y[r];
  for (int r = 0; r < m_in; ++r) result.duals_ineq[r] = row_sign[m_eq + r] * y[m_eq + r];
  result.reduced_costs = problem.c;
  if (m_eq > 0) result.reduced_costs -= problem.A_eq.transpose() * result.duals_eq;
  if (m_in > 0) result.reduced_costs -= problem.A_ineq.transpose() * result.duals_ineq;
  for (int j = 0; j < n; ++j) {
    if (neg_col[j] >= 0) result.reduced_costs[j] = 0.0;
  }
  return result;
}

}  // namespace rmp
