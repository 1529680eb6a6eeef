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

#ifndef RMP_CLI_HPP_
#define RMP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rmp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitSolverFailure = 4;

inline constexpr std::string_view kVersion = "1.0.0";

// Entry point shared by the `rmp` binary and the tests. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Shortest round-trip decimal form; negative zero prints as "0".
std::string format_double(double value);

// "0,0.5,1" or the inclusive range "start:step:stop".
// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(std::string_view text);

}  // namespace rmp::cli

#endif  // RMP_CLI_HPP_
