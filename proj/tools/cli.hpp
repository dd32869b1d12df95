// Copyright 2026 The Qihyp Authors.
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

#ifndef QIHYP_TOOLS_CLI_HPP
#define QIHYP_TOOLS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qihyp/grouplab.hpp"

// Experiment runner behind the qihyp executable: strict JSON configs in,
// deterministic CSV/JSON reports out. Identical (config, seed) pairs produce
// byte-identical report files.
namespace qihyp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitPropertyViolation = 2;

struct RunConfig {
  std::string subcommand;  // packing | growth | freepair | constants | words
  nlohmann::json params;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  bool ceiling_override = false;
  int threads = 1;
};

/// Parses a config file for the given subcommand. Unknown keys are rejected
/// before any computation; malformed JSON is reported with line and column.
/// Flags (seed/out/ceiling override) are applied by the caller afterwards.
RunConfig load_config(const std::string& subcommand,
                      const std::filesystem::path& config_path);

/// Executes the configured experiment and writes its report file(s).
/// Returns kExitOk, or kExitPropertyViolation when a checked mathematical
/// property fails on the computed output (which would falsify the
/// implementation, not the theory). Validation problems throw.
int run(const RunConfig& config);

/// Reads {"generators": [{"label": .., "matrix": [[a,b],[c,d]]}, ..],
/// "inverseClosed": bool}.
grouplab::GroupSpec load_group_file(const std::filesystem::path& path);

nlohmann::json group_spec_to_json(const grouplab::GroupSpec& spec);

/// Fixed-format floating point rendering used in CSV reports ("%.17g").
std::string format_double(double value);

}  // namespace qihyp::cli

#endif  // QIHYP_TOOLS_CLI_HPP
