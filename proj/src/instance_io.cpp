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

#include "rmp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rmp {

using nlohmann::json;

json instance_to_json(const FactorGraphInstance& instance) {
  json factors = json::array();
  for (const Factor& f : instance.factors) {
    factors.push_back({{"neighbors", f.neighbors}, {"thetas", f.thetas}, {"table", f.table}});
  }
  return {{"alphabet", instance.alphabet.symbols},
          {"variables", instance.num_variables},
          {"factors", std::move(factors)}};
}

FactorGraphInstance instance_from_json(const json& doc) {
  FactorGraphInstance inst;
  try {
    inst.alphabet.symbols = doc.at("alphabet").get<std::vector<double>>();
    inst.num_variables = doc.at("variables").get<int>();
    for (const json& f : doc.at("factors")) {
      Factor factor;
      factor.neighbors = f.at("neighbors").get<std::vector<int>>();
      factor.thetas = f.at("thetas").get<std::vector<double>>();
      // JSON has no NaN literal; null entries stand for non-finite values.
      for (const json& v : f.at("table")) {
        factor.table.push_back(v.is_null() ? std::nan("") : v.get<double>());
      }
      inst.factors.push_back(std::move(factor));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("instance file: ") + e.what());
  }
  require_valid(inst);
  return inst;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const json& doc, const std::filesystem::path& path) {
  write_text(doc.dump(2) + "\n", path);
}

FactorGraphInstance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json(path));
}

void save_instance(const FactorGraphInstance& instance, const std::filesystem::path& path) {
  write_json(instance_to_json(instance), path);
}

json marginals_to_json(const MarginalSet& marginals) {
  return {{"factor_marginals", marginals.factor_marginals},
          {"node_marginals", marginals.node_marginals}};
}

MarginalSet marginals_from_json(const json& doc) {
  MarginalSet m;
  try {
    m.factor_marginals = doc.at("factor_marginals").get<std::vector<std::vector<double>>>();
    m.node_marginals = doc.at("node_marginals").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("marginals file: ") + e.what());
  }
  return m;
}

}  // namespace rmp
