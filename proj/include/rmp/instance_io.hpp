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

#ifndef RMP_INSTANCE_IO_HPP_
#define RMP_INSTANCE_IO_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rmp/graph.hpp"
#include "rmp/marginals.hpp"

namespace rmp {

// On-disk JSON layout:
//   {"alphabet": [..], "variables": n,
//    "factors": [{"neighbors": [..], "thetas": [..], "table": [..]}, ..]}
// with each table in (assignment-major, theta-minor) order.
nlohmann::json instance_to_json(const FactorGraphInstance& instance);

// Throws std::invalid_argument on schema errors or when validate() fails.
FactorGraphInstance instance_from_json(const nlohmann::json& doc);

FactorGraphInstance load_instance(const std::filesystem::path& path);
void save_instance(const FactorGraphInstance& instance, const std::filesystem::path& path);

// Companion format for solver output:
//   {"factor_marginals": [[..], ..], "node_marginals": [[..], ..]}
nlohmann::json marginals_to_json(const MarginalSet& marginals);
MarginalSet marginals_from_json(const nlohmann::json& doc);

nlohmann::json read_json(const std::filesystem::path& path);

// Pretty-printed with a trailing newline.
void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace rmp

#endif  // RMP_INSTANCE_IO_HPP_
