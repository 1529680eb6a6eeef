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

#include "rmp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmp/experiments.hpp"
#include "rmp/game_eval.hpp"
#include "rmp/instance_io.hpp"
#include "rmp/model_gen.hpp"
#include "rmp/nominal_mp.hpp"
#include "rmp/robust_mp.hpp"

namespace rmp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

double parse_real(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": expected a real number, got '" + s + "'");
  }
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("seed: expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = text.find(':', start);
      parts.push_back(parse_real(text.substr(start, colon - start), "grid"));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
      throw std::invalid_argument("grid: range must be start:step:stop with step > 0 and stop >= start");
    }
    const auto count = static_cast<long long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
    if (count > 100000) throw std::invalid_argument("grid: too many points");
    for (long long k = 0; k < count; ++k) {
      grid.push_back(std::round((parts[0] + static_cast<double>(k) * parts[1]) * 1e12) / 1e12);
    }
    return grid;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    grid.push_back(parse_real(text.substr(start, comma - start), "grid"));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return grid;
}

namespace {

// Resolved settings for one invocation.
struct Settings {
  IsingSpec spec{.n = 93, .delta = 1.0, .h = 0.0, .seed = 1, .edge_sign_prob = 0.5};
  AdmmConfig admm;
  std::string delta_grid = "0:0.25:2";
  std::string alpha_grid = "0:0.1:1";
  int samples = 50;
  std::string out = ".";
  int threads = 0;
  bool timing = false;
  std::set<std::string> provided;  // keys set by the config file or a flag
};

using Setter = std::function<void(Settings&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n", [](Settings& s, const std::string& v) { s.spec.n = static_cast<int>(parse_integer(v, "n")); }},
      {"delta", [](Settings& s, const std::string& v) { s.spec.delta = parse_real(v, "delta"); }},
      {"h", [](Settings& s, const std::string& v) { s.spec.h = parse_real(v, "h"); }},
      {"seed", [](Settings& s, const std::string& v) { s.spec.seed = parse_seed(v); }},
      {"edge_sign_prob",
       [](Settings& s, const std::string& v) { s.spec.edge_sign_prob = parse_real(v, "edge_sign_prob"); }},
      {"rho", [](Settings& s, const std::string& v) { s.admm.rho = parse_real(v, "rho"); }},
      {"max_iter",
       [](Settings& s, const std::string& v) { s.admm.max_iter = static_cast<int>(parse_integer(v, "max_iter")); }},
      {"primal_tol", [](Settings& s, const std::string& v) { s.admm.primal_tol = parse_real(v, "primal_tol"); }},
      {"objective_tol",
       [](Settings& s, const std::string& v) { s.admm.objective_tol = parse_real(v, "objective_tol"); }},
      {"delta_grid", [](Settings& s, const std::string& v) { s.delta_grid = v; }},
      {"alpha_grid", [](Settings& s, const std::string& v) { s.alpha_grid = v; }},
      {"samples",
       [](Settings& s, const std::string& v) { s.samples = static_cast<int>(parse_integer(v, "samples")); }},
      {"out", [](Settings& s, const std::string& v) { s.out = v; }},
      {"threads",
       [](Settings& s, const std::string& v) { s.threads = static_cast<int>(parse_integer(v, "threads")); }},
  };
  return table;
}

// Config values arrive as JSON; numbers, strings and number arrays (grids)
// are flattened to the same text a flag would carry.
std::string config_text(const std::string& key, const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer() || value.is_number_unsigned()) return value.dump();
  if (value.is_number_float()) return format_double(value.get<double>());
  if (value.is_array()) {
    std::string joined;
    for (const json& v : value) {
      if (!v.is_number()) throw std::invalid_argument("config: " + key + " must hold numbers");
      if (!joined.empty()) joined += ",";
      joined += format_double(v.get<double>());
    }
    return joined;
  }
  throw std::invalid_argument("config: unsupported value for " + key);
}

// Flags registered on one subcommand, resolved as defaults <- config <- flags.
class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON config file; flags override its values");
  }

  void add(const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    auto holder = std::make_unique<std::string>();
    CLI::Option* opt = app_->add_option(flag, *holder, help);
    entries_.push_back({key, opt, std::move(holder)});
  }

  void add_timing() { app_->add_flag("--timing", timing_, "Record wall-clock columns (not reproducible)"); }

  Settings resolve() const {
    Settings s;
    if (!config_path_.empty()) {
      const json doc = read_json(config_path_);
      if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
      for (const auto& [key, value] : doc.items()) {
        auto it = setters().find(key);
        if (it == setters().end()) throw std::invalid_argument("config: unknown key '" + key + "'");
        it->second(s, config_text(key, value));
        s.provided.insert(key);
      }
    }
    for (const Entry& e : entries_) {
      if (e.option->count() == 0) continue;
      setters().at(e.key)(s, *e.value);
      s.provided.insert(e.key);
    }
    s.timing = timing_;
    return s;
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* option;
    std::unique_ptr<std::string> value;
  };
  CLI::App* app_;
  std::string config_path_;
  bool timing_ = false;
  std::vector<Entry> entries_;
};

void add_spec_flags(FlagSet& flags, bool with_delta) {
  flags.add("n", "Number of tree nodes (default 93)");
  if (with_delta) flags.add("delta", "Half-width of each edge's parameter set (default 1)");
  flags.add("h", "Field half-width; fields are drawn from U[-h, h] (required)");
  flags.add("seed", "RNG seed (default 1)");
  flags.add("edge_sign_prob", "Probability that an edge is positive (default 0.5)");
}

void add_admm_flags(FlagSet& flags) {
  flags.add("rho", "ADMM penalty (default 1)");
  flags.add("max_iter", "Iteration cap (default 100)");
  flags.add("primal_tol", "Mean l1 residual threshold (default 1e-6)");
  flags.add("objective_tol", "Threshold on |C(t) - C(t-1)| (default 1e-8)");
}

void require_key(const Settings& s, const std::string& key) {
  if (!s.provided.contains(key)) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    throw std::invalid_argument(flag + " is required (as a flag or config key)");
  }
}

json settings_json(const Settings& s) {
  return {{"n", s.spec.n},
          {"delta", s.spec.delta},
          {"h", s.spec.h},
          {"seed", s.spec.seed},
          {"edge_sign_prob", s.spec.edge_sign_prob},
          {"rho", s.admm.rho},
          {"max_iter", s.admm.max_iter},
          {"primal_tol", s.admm.primal_tol},
          {"objective_tol", s.admm.objective_tol},
          {"delta_grid", s.delta_grid},
          {"alpha_grid", s.alpha_grid},
          {"samples", s.samples},
          {"timing", s.timing}};
}

json meta_record(const std::string& command, const Settings& s) {
  return {{"tool", "rmp"}, {"version", std::string(kVersion)}, {"command", command}, {"settings", settings_json(s)}};
}

std::string csv_escape(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return text;
}

const char* kPlotHeader =
    "# Generated by rmp. Requires pandas and matplotlib.\n"
    "import sys\n"
    "import pandas as pd\n"
    "import matplotlib\n"
    "matplotlib.use('Agg')\n"
    "import matplotlib.pyplot as plt\n\n";

std::string plot_experiment1_script() {
  return std::string(kPlotHeader) +
         "df = pd.read_csv('experiment1.csv')\n"
         "fig, ax = plt.subplots()\n"
         "ax.plot(df['delta'], df['J_robust'], 'o-', label='Robust Max-Product')\n"
         "ax.plot(df['delta'], df['J_nominal_worstcase'], 's-', label='Max-Product (nominal)')\n"
         "if df['J_oracle'].notna().any():\n"
         "    ax.plot(df['delta'], df['J_oracle'], 'k--', label='LP oracle')\n"
         "ax.set_xlabel('Delta')\n"
         "ax.set_ylabel(\"Engineer's objective\")\n"
         "ax.legend()\n"
         "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else 'experiment1.png', dpi=150)\n";
}

std::string plot_experiment2_script() {
  return std::string(kPlotHeader) +
         "df = pd.read_csv('experiment2.csv')\n"
         "samples = pd.read_csv('experiment2_samples.csv')\n"
         "fig, ax = plt.subplots()\n"
         "ax.scatter(samples['alpha'], samples['payoff_robust'], s=6, alpha=0.4)\n"
         "ax.scatter(samples['alpha'], samples['payoff_nominal'], s=6, alpha=0.4)\n"
         "ax.plot(df['alpha'], df['payoff_robust'], '-', label='Robust Max-Product')\n"
         "ax.plot(df['alpha'], df['payoff_nominal'], '-', label='Max-Product (nominal)')\n"
         "ax.set_xlabel('alpha')\n"
         "ax.set_ylabel(\"Engineer's payoff\")\n"
         "ax.legend()\n"
         "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else 'experiment2.png', dpi=150)\n";
}

std::string plot_convergence_script() {
  return std::string(kPlotHeader) +
         "df = pd.read_csv('convergence.csv')\n"
         "fig, (top, bottom) = plt.subplots(2, 1, sharex=True)\n"
         "top.plot(df['iteration'], df['J'], label='J')\n"
         "top.plot(df['iteration'], -df['C'], '--', label='-C')\n"
         "top.set_ylabel(\"Engineer's objective\")\n"
         "top.legend()\n"
         "bottom.semilogy(df['iteration'], df['mean_l1_residual'].clip(lower=1e-18))\n"
         "bottom.set_xlabel('iteration')\n"
         "bottom.set_ylabel('mean marginal inconsistency')\n"
         "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else 'convergence.png', dpi=150)\n";
}

std::string trace_csv(const SolveReport& report, bool timing) {
  std::ostringstream os;
  os << "iteration,C,J,mean_l1_residual" << (timing ? ",wall_ms" : "") << "\n";
  for (int t = 0; t < report.iterations_used; ++t) {
    os << (t + 1) << ',' << format_double(report.internal_cost_trace[t]) << ','
       << format_double(report.objective_trace[t]) << ',' << format_double(report.residual_trace[t]);
    if (timing) os << ',' << format_double(report.wall_ms_trace[t]);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_gen(const Settings& s, std::ostream& out) {
  require_key(s, "h");
  const IsingModel model = generate_ising(s.spec);
  const fs::path dir = s.out;
  save_instance(model.instance, dir / "instance.json");
  json meta = meta_record("gen", s);
  json edges = json::array();
  for (std::size_t e = 0; e < model.edges.size(); ++e) {
    edges.push_back({model.edges[e].first, model.edges[e].second, model.edge_signs[e]});
  }
  meta["edges"] = std::move(edges);
  meta["fields"] = model.fields;
  write_json(meta, dir / "instance.meta.json");
  out << "wrote " << (dir / "instance.json").string() << " (" << model.instance.num_variables
      << " variables, " << model.instance.num_factors() << " factors)\n";
  return kExitOk;
}

int cmd_solve(const Settings& s, const std::string& instance_path, std::ostream& out) {
  const FactorGraphInstance instance = load_instance(instance_path);
  const SolveReport report = solve(instance, s.admm);
  const fs::path dir = s.out;
  write_text(trace_csv(report, s.timing), dir / "trace.csv");
  write_json(marginals_to_json(report.marginals), dir / "marginals.json");
  json meta = meta_record("solve", s);
  meta["instance"] = instance_path;
  meta["iterations_used"] = report.iterations_used;
  meta["converged"] = report.converged;
  meta["engineer_objective"] = report.engineer_objective;
  if (s.timing) meta["wall_ms"] = report.wall_time_ms;
  write_json(meta, dir / "solve.meta.json");
  out << "J=" << format_double(report.engineer_objective) << " iterations=" << report.iterations_used
      << " converged=" << (report.converged ? "yes" : "no") << "\n";
  return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_convergence(const Settings& s, const std::string& instance_path, std::ostream& out) {
  const FactorGraphInstance instance = load_instance(instance_path);
  const SolveReport report = solve(instance, s.admm);
  const fs::path dir = s.out;
  write_text(trace_csv(report, s.timing), dir / "convergence.csv");
  write_text(plot_convergence_script(), dir / "plot_convergence.py");
  json meta = meta_record("convergence", s);
  meta["instance"] = instance_path;
  meta["iterations_used"] = report.iterations_used;
  meta["converged"] = report.converged;
  write_json(meta, dir / "convergence.meta.json");
  out << "iterations=" << report.iterations_used << " final_residual="
      << format_double(report.residual_trace.back()) << " J=" << format_double(report.engineer_objective) << "\n";
  return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_oracle(const Settings& s, const std::string& instance_path, std::ostream& out) {
  const FactorGraphInstance instance = load_instance(instance_path);
  std::ostringstream csv;
  csv << "method,value,status\n";
  bool failed = false;
  json meta = meta_record("oracle", s);
  meta["instance"] = instance_path;

  if (loc_lp_size(instance).rows <= kOracleRowCap) {
    const LocLpResult r = loc_lp(instance);
    failed |= r.status != SolveStatus::kOptimal;
    csv << "loc_lp," << (r.status == SolveStatus::kOptimal ? format_double(r.value) : "") << ','
        << to_string(r.status) << '\n';
    out << "loc_lp: " << to_string(r.status) << " value=" << format_double(r.value) << "\n";
  } else {
    csv << "loc_lp,,skipped_size\n";
    out << "loc_lp: skipped (instance too large)\n";
  }

  std::size_t joint_size = kJointOracleCap + 1;
  try {
    joint_size = int_pow(instance.alphabet.size(), instance.num_variables);
  } catch (const std::overflow_error&) {
  }
  if (joint_size <= kJointOracleCap) {
    const JointMinimaxResult r = exact_minimax_joint(instance);
    failed |= r.status != SolveStatus::kOptimal;
    csv << "exact_minimax_joint," << (r.status == SolveStatus::kOptimal ? format_double(r.value) : "") << ','
        << to_string(r.status) << '\n';
    out << "exact_minimax_joint: " << to_string(r.status) << " value=" << format_double(r.value) << "\n";
  } else {
    csv << "exact_minimax_joint,,skipped_size\n";
    out << "exact_minimax_joint: skipped (instance too large)\n";
  }
  const fs::path dir = s.out;
  write_text(csv.str(), dir / "oracle.csv");
  write_json(meta, dir / "oracle.meta.json");
  return failed ? kExitSolverFailure : kExitOk;
}

ExperimentConfig experiment_config(const Settings& s) {
  ExperimentConfig cfg;
  cfg.spec = s.spec;
  cfg.delta_grid = parse_grid(s.delta_grid);
  cfg.alpha_grid = parse_grid(s.alpha_grid);
  cfg.samples_per_point = s.samples;
  cfg.admm = s.admm;
  cfg.output_dir = s.out;
  cfg.threads = s.threads;
  return cfg;
}

int cmd_experiment1(const Settings& s, std::ostream& out) {
  require_key(s, "h");
  const ExperimentConfig cfg = experiment_config(s);
  const std::vector<Experiment1Row> rows = run_experiment1(cfg);

  std::ostringstream csv;
  csv << "delta,J_robust,J_nominal_worstcase,J_oracle,oracle_status,robust_iterations,robust_converged,status\n";
  bool any_error = false;
  bool any_unconverged = false;
  for (const Experiment1Row& r : rows) {
    std::string status = "ok";
    if (!r.error.empty()) {
      status = "error: " + csv_escape(r.error);
      any_error = true;
    } else if (!r.robust_converged) {
      status = "not_converged";
      any_unconverged = true;
    }
    csv << format_double(r.delta) << ',' << (r.error.empty() ? format_double(r.j_robust) : "") << ','
        << (r.error.empty() ? format_double(r.j_nominal) : "") << ','
        << (r.j_oracle ? format_double(*r.j_oracle) : "") << ',' << r.oracle_status << ','
        << r.robust_iterations << ',' << (r.robust_converged ? 1 : 0) << ',' << status << '\n';
    out << "delta=" << format_double(r.delta) << " J_robust=" << format_double(r.j_robust)
        << " J_nominal=" << format_double(r.j_nominal) << " " << status << "\n";
  }
  const fs::path dir = cfg.output_dir;
  write_text(csv.str(), dir / "experiment1.csv");
  write_text(plot_experiment1_script(), dir / "plot_experiment1.py");
  write_json(meta_record("experiment1", s), dir / "experiment1.meta.json");
  if (any_error) return kExitSolverFailure;
  return any_unconverged ? kExitNotConverged : kExitOk;
}

int cmd_experiment2(const Settings& s, std::ostream& out) {
  require_key(s, "h");
  const ExperimentConfig cfg = experiment_config(s);
  const Experiment2Result result = run_experiment2(cfg);

  std::ostringstream csv;
  std::ostringstream samples;
  csv << "alpha,payoff_robust,payoff_nominal,sample_mean_robust,sample_mean_nominal\n";
  samples << "alpha,sample,payoff_robust,payoff_nominal\n";
  for (const Experiment2Row& r : result.rows) {
    double mean_robust = 0.0;
    double mean_nominal = 0.0;
    for (std::size_t k = 0; k < r.samples_robust.size(); ++k) {
      mean_robust += r.samples_robust[k];
      mean_nominal += r.samples_nominal[k];
      samples << format_double(r.alpha) << ',' << k << ',' << format_double(r.samples_robust[k]) << ','
              << format_double(r.samples_nominal[k]) << '\n';
    }
    mean_robust /= static_cast<double>(r.samples_robust.size());
    mean_nominal /= static_cast<double>(r.samples_nominal.size());
    csv << format_double(r.alpha) << ',' << format_double(r.payoff_robust) << ','
        << format_double(r.payoff_nominal) << ',' << format_double(mean_robust) << ','
        << format_double(mean_nominal) << '\n';
    out << "alpha=" << format_double(r.alpha) << " robust=" << format_double(r.payoff_robust)
        << " nominal=" << format_double(r.payoff_nominal) << "\n";
  }
  const fs::path dir = cfg.output_dir;
  write_text(csv.str(), dir / "experiment2.csv");
  write_text(samples.str(), dir / "experiment2_samples.csv");
  write_text(plot_experiment2_script(), dir / "plot_experiment2.py");
  json meta = meta_record("experiment2", s);
  meta["robust_iterations"] = result.robust_iterations;
  meta["robust_converged"] = result.robust_converged;
  write_json(meta, dir / "experiment2.meta.json");
  return result.robust_converged ? kExitOk : kExitNotConverged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust max-product: minimax strategies for factor-graph games"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate a random-tree Ising instance");
  FlagSet gen_flags(gen);
  add_spec_flags(gen_flags, true);
  gen_flags.add("out", "Output directory (default .)");

  std::string instance_path;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run robust max-product on an instance file");
  solve_cmd->add_option("instance", instance_path, "Instance JSON file")->required();
  FlagSet solve_flags(solve_cmd);
  add_admm_flags(solve_flags);
  solve_flags.add("out", "Output directory (default .)");
  solve_flags.add_timing();

  CLI::App* conv = app.add_subcommand("convergence", "Write the per-iteration convergence trace");
  conv->add_option("instance", instance_path, "Instance JSON file")->required();
  FlagSet conv_flags(conv);
  add_admm_flags(conv_flags);
  conv_flags.add("out", "Output directory (default .)");
  conv_flags.add_timing();

  CLI::App* oracle = app.add_subcommand("oracle", "Solve small instances exactly with the LP oracles");
  oracle->add_option("instance", instance_path, "Instance JSON file")->required();
  FlagSet oracle_flags(oracle);
  oracle_flags.add("out", "Output directory (default .)");

  CLI::App* exp1 = app.add_subcommand("experiment1", "Engineer's objective against delta");
  FlagSet exp1_flags(exp1);
  add_spec_flags(exp1_flags, false);
  add_admm_flags(exp1_flags);
  exp1_flags.add("delta_grid", "Comma list or start:step:stop (default 0:0.25:2)");
  exp1_flags.add("threads", "Worker threads (default: all cores)");
  exp1_flags.add("out", "Output directory (default .)");

  CLI::App* exp2 = app.add_subcommand("experiment2", "Payoff when Nature mixes towards uniform");
  FlagSet exp2_flags(exp2);
  add_spec_flags(exp2_flags, true);
  add_admm_flags(exp2_flags);
  exp2_flags.add("alpha_grid", "Comma list or start:step:stop (default 0:0.1:1)");
  exp2_flags.add("samples", "Sampled instantiations per alpha (default 50)");
  exp2_flags.add("threads", "Worker threads (default: all cores)");
  exp2_flags.add("out", "Output directory (default .)");

  std::vector<std::string> argv_storage{"rmp"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_flags.resolve(), out);
    if (solve_cmd->parsed()) return cmd_solve(solve_flags.resolve(), instance_path, out);
    if (conv->parsed()) return cmd_convergence(conv_flags.resolve(), instance_path, out);
    if (oracle->parsed()) return cmd_oracle(oracle_flags.resolve(), instance_path, out);
    if (exp1->parsed()) return cmd_experiment1(exp1_flags.resolve(), out);
    if (exp2->parsed()) return cmd_experiment2(exp2_flags.resolve(), out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitUsage;
}

}  // namespace rmp::cli
