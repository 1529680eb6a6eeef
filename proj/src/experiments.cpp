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

#include "rmp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rmp/game_eval.hpp"
#include "rmp/nominal_mp.hpp"
#include "rmp/rng.hpp"

namespace rmp {

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument(std::string(name) + " must be sorted ascending");
  }
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {

double worst_case_payoff(const FactorGraphInstance& instance, const EngineerStrategy& p) {
  return expected_payoff(instance, p, nature_best_response(instance, p));
}

EngineerStrategy nominal_strategy(const FactorGraphInstance& instance) {
  const MapResult map = max_product_map(nominal_instance(instance));
  return EngineerStrategy::from_assignment(instance, map.assignment);
}

}  // namespace

std::vector<Experiment1Row> run_experiment1(const ExperimentConfig& cfg) {
  check_spec(cfg.spec);
  check_config(cfg.admm);
  check_grid(cfg.delta_grid, "delta grid");
  for (double d : cfg.delta_grid) {
    if (!(d >= 0.0)) throw std::invalid_argument("delta grid values must be >= 0");
  }

  std::vector<Experiment1Row> rows(cfg.delta_grid.size());
  parallel_for(static_cast<int>(rows.size()), cfg.threads, [&](int k) {
    Experiment1Row& row = rows[k];
    row.delta = cfg.delta_grid[k];
    try {
      IsingSpec spec = cfg.spec;
      spec.delta = row.delta;
      const FactorGraphInstance instance = build_ising(spec);

      const SolveReport report = solve(instance, cfg.admm);
      row.robust_iterations = report.iterations_used;
      row.robust_converged = report.converged;
      row.j_robust = worst_case_payoff(instance, EngineerStrategy{report.marginals, std::nullopt});
      row.j_nominal = worst_case_payoff(instance, nominal_strategy(instance));

      if (loc_lp_size(instance).rows <= kOracleRowCap) {
        const LocLpResult oracle = loc_lp(instance);
        row.oracle_status = std::string(to_string(oracle.status));
        if (oracle.status == SolveStatus::kOptimal) row.j_oracle = oracle.value;
      } else {
        row.oracle_status = "skipped_size";
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return rows;
}

Experiment2Result run_experiment2(const ExperimentConfig& cfg) {
  check_spec(cfg.spec);
  check_config(cfg.admm);
  check_grid(cfg.alpha_grid, "alpha grid");
  for (double a : cfg.alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha grid values must lie in [0, 1]");
  }
  if (cfg.samples_per_point < 1) throw std::invalid_argument("samples must be >= 1");

  const FactorGraphInstance instance = build_ising(cfg.spec);
  const SolveReport report = solve(instance, cfg.admm);
  const EngineerStrategy robust{report.marginals, std::nullopt};
  const EngineerStrategy nominal = nominal_strategy(instance);
  const NatureStrategy robust_response = nature_best_response(instance, robust);
  const NatureStrategy nominal_response = nature_best_response(instance, nominal);

  Experiment2Result result;
  result.robust_iterations = report.iterations_used;
  result.robust_converged = report.converged;
  result.j_robust = expected_payoff(instance, robust, robust_response);
  result.j_nominal = expected_payoff(instance, nominal, nominal_response);
  result.rows.resize(cfg.alpha_grid.size());

  const int samples = cfg.samples_per_point;
  parallel_for(static_cast<int>(result.rows.size()), cfg.threads, [&](int k) {
    Experiment2Row& row = result.rows[k];
    row.alpha = cfg.alpha_grid[k];
    const NatureStrategy q = mix_with_uniform(robust_response, row.alpha);
    const NatureStrategy q_nominal = mix_with_uniform(nominal_response, row.alpha);
    row.payoff_robust = expected_payoff(instance, robust, q);
    row.payoff_nominal = expected_payoff(instance, nominal, q_nominal);
    for (int s = 0; s < samples; ++s) {
      const auto stream = static_cast<std::uint64_t>(k) * samples + s;
      const std::vector<int> x = sample_tree_mrf(instance, robust, mix_seed(cfg.spec.seed, stream));
      row.samples_robust.push_back(instantiation_payoff(instance, x, q));
      const std::vector<int> x_nominal =
          sample_tree_mrf(instance, nominal, mix_seed(~cfg.spec.seed, stream));
      row.samples_nominal.push_back(instantiation_payoff(instance, x_nominal, q_nominal));
    }
  });
  return result;
}

}  // namespace rmp
