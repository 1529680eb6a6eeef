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
#include <functional>
#include <stdexcept>

#include "rmp/numerics.hpp"

namespace rmp {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

std::vector<double> project_simplex(std::span<const double> v) {
  if (v.empty()) throw std::domain_error("project_simplex: empty input");
  for (double x : v) {
    if (!std::isfinite(x)) throw std::domain_error("project_simplex: non-finite input");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] - (sum_{j<k} sorted[j] - 1) / k > 0.
  double prefix = 0.0;
  double threshold = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    const double t = (prefix - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) threshold = t;
  }

  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::max(v[j] - threshold, 0.0);
    total += out[j];
  }
  // One rescale pass pins the sum to 1 up to a couple of ulps.
  if (total > 0.0 && total != 1.0) {
    for (double& x : out) x /= total;
  }
  return out;
}

}  // namespace rmp
