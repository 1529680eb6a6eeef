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

#ifndef RMP_EXPERIMENTS_HPP_
#define RMP_EXPERIMENTS_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rmp/model_gen.hpp"
#include "rmp/robust_mp.hpp"

namespace rmp {

// Instances whose local-polytope LP has more rows than this get no oracle
// column.
inline constexpr int kOracleRowCap = 1500;

struct ExperimentConfig {
  IsingSpec spec;
  std::vector<double> delta_grid;
  std::vector<double> alpha_grid;
  int samples_per_point = 50;
  AdmmConfig admm;
  std::filesystem::path output_dir = ".";
  int threads = 0;  // 0 = hardware concurrency
};

// Throws std::invalid_argument for empty or unsorted grids or samples < 1.
void check_grid(const std::vector<double>& grid, const char* name);

struct Experiment1Row {
  double delta = 0.0;
  double j_robust = 0.0;
  double j_nominal = 0.0;
  std::optional<double> j_oracle;
  std::string oracle_status;  // "optimal", "skipped_size" or an LP status
  int robust_iterations = 0;
  bool robust_converged = false;
  std::string error;  // empty when the point succeeded
};

// One seeded tree; each delta rescales only the edge parameter domains.
std::vector<Experiment1Row> run_experiment1(const ExperimentConfig& cfg);

struct Experiment2Row {
  double alpha = 0.0;
  double payoff_robust = 0.0;
  double payoff_nominal = 0.0;
  std::vector<double> samples_robust;
  std::vector<double> samples_nominal;
};

struct Experiment2Result {
  std::vector<Experiment2Row> rows;
  double j_robust = 0.0;   // alpha = 0 payoff of the robust strategy
  double j_nominal = 0.0;  // alpha = 0 payoff of the nominal MAP strategy
  int robust_iterations = 0;
  bool robust_converged = false;
};

// Robust and nominal strategies on spec.delta, played against Nature's best
// response mixed with the uniform strategy for every alpha.
Experiment2Result run_experiment2(const ExperimentConfig& cfg);

// Runs body(0..count-1) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace rmp

#endif  // RMP_EXPERIMENTS_HPP_
