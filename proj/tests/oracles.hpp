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

#ifndef RMP_TESTS_ORACLES_HPP_
#define RMP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rmp/numerics.hpp"

namespace rmp::testing {

// Bisection on the threshold tau with sum max(v - tau, 0) = 1.
inline std::vector<double> projection_oracle(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end()) - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : v) s += std::max(x - mid, 0.0);
    (s > 1.0 ? lo : hi) = mid;
  }
  std::vector<double> p;
  for (double x : v) p.push_back(std::max(x - lo, 0.0));
  return p;
}

inline double norm2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

inline double qp_objective(const QpProblem& p, const Eigen::VectorXd& z) {
  return 0.5 * z.dot(p.Q * z) + p.c.dot(z);
}

inline bool qp_feasible(const QpProblem& p, const Eigen::VectorXd& z, double tol = 1e-12) {
  return ((p.G * z - p.h).array() >= -tol).all();
}

// Grid search over [lo, hi]^d, then repeated zooms around the incumbent.
inline double qp_grid_oracle(const QpProblem& p, double lo, double hi, int steps = 0) {
  const int d = static_cast<int>(p.c.size());
  if (steps == 0) steps = d == 2 ? 200 : 40;
  Eigen::VectorXd centre = Eigen::VectorXd::Constant(d, 0.5 * (lo + hi));
  double half = 0.5 * (hi - lo);
  double best = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 8; ++pass) {
    Eigen::VectorXd best_z = centre;
    std::vector<int> idx(d, 0);
    while (true) {
      Eigen::VectorXd z(d);
      for (int k = 0; k < d; ++k) z[k] = centre[k] - half + 2.0 * half * idx[k] / steps;
      if (qp_feasible(p, z)) {
        const double f = qp_objective(p, z);
        if (f < best) {
          best = f;
          best_z = z;
        }
      }
      int k = 0;
      while (k < d && ++idx[k] > steps) idx[k++] = 0;
      if (k == d) break;
    }
    centre = best_z;
    half *= 0.3;
  }
  return best;
}

// Convex QP on the box [-1, 1]^d with two extra cuts that keep a random
// interior point feasible; Q has a random rank in 0..d.
inline QpProblem random_box_qp(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  const int rank = static_cast<int>(rng() % (d + 1));
  Eigen::MatrixXd L(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) L(i, j) = g(rng);
  QpProblem p;
  p.Q = L * L.transpose();
  p.c = Eigen::VectorXd(d);
  for (int k = 0; k < d; ++k) p.c[k] = 2.0 * g(rng);
  const int extra = 2;
  p.G = Eigen::MatrixXd::Zero(2 * d + extra, d);
  p.h = Eigen::VectorXd(2 * d + extra);
  for (int k = 0; k < d; ++k) {
    p.G(2 * k, k) = 1.0;
    p.h[2 * k] = -1.0;
    p.G(2 * k + 1, k) = -1.0;
    p.h[2 * k + 1] = -1.0;
  }
  Eigen::VectorXd anchor(d);
  for (int k = 0; k < d; ++k) anchor[k] = 0.5 * std::tanh(g(rng));
  for (int e = 0; e < extra; ++e) {
    for (int k = 0; k < d; ++k) p.G(2 * d + e, k) = g(rng);
    p.h[2 * d + e] = p.G.row(2 * d + e).dot(anchor) - 0.3;
  }
  return p;
}

// Feasible, bounded LP: a random nonnegative point satisfies every row and
// the cost is positive on z >= 0.
inline LpProblem random_feasible_lp(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 3 + static_cast<int>(rng() % 8);
  const int m_eq = static_cast<int>(rng() % 3);
  const int m_in = 1 + static_cast<int>(rng() % 6);
  Eigen::VectorXd z0(n);
  for (int j = 0; j < n; ++j) z0[j] = unit(rng);
  LpProblem p;
  p.A_eq = Eigen::MatrixXd(m_eq, n);
  p.A_ineq = Eigen::MatrixXd(m_in, n);
  for (int i = 0; i < m_eq; ++i)
    for (int j = 0; j < n; ++j) p.A_eq(i, j) = g(rng);
  for (int i = 0; i < m_in; ++i)
    for (int j = 0; j < n; ++j) p.A_ineq(i, j) = g(rng);
  p.b_eq = p.A_eq * z0;
  p.b_ineq = p.A_ineq * z0;
  for (int i = 0; i < m_in; ++i) p.b_ineq[i] -= unit(rng);
  p.c = Eigen::VectorXd(n);
  for (int j = 0; j < n; ++j) p.c[j] = unit(rng) + 0.05;
  p.lower.assign(n, 0.0);
  return p;
}

// |primal - dual| for a solved LP with the problem's lower bounds.
inline double lp_duality_gap(const LpProblem& p, const LpResult& r) {
  double dual = p.b_eq.dot(r.duals_eq) + p.b_ineq.dot(r.duals_ineq);
  for (std::size_t j = 0; j < p.lower.size(); ++j) {
    if (std::isfinite(p.lower[j])) dual += p.lower[j] * r.reduced_costs[static_cast<int>(j)];
  }
  return std::abs(r.value - dual);
}

}  // namespace rmp::testing

#endif  // RMP_TESTS_ORACLES_HPP_
