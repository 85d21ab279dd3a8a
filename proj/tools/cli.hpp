// Copyright 2026 The mvcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: verify | table | fixtures | roundtrip | oracle.
//
// Exit codes: 0 pass, 1 violations or mismatch, 2 configuration, regime,
// budget or I/O errors.

#ifndef MVCODE_TOOLS_CLI_HPP_
#define MVCODE_TOOLS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mvcode/serialize.hpp"

namespace mvcode::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitError = 2;

struct RunConfig {
  std::string subcommand;
  int n = 6;
  std::optional<int> cw;  // default n-1
  std::optional<int> cr;  // default n-1
  int nu = 2;
  std::optional<int> h;   // default n/2-1, or (n-c)/4 for the far-quorum fixture
  std::int64_t K = 1024;
  std::string scheme = "c1";
  std::string mode = "exhaustive";
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  std::string layer = "both";
  std::string out;
  std::string format = "json";
  std::uint64_t budget = kDefaultBudget;
  int jobs = 1;
  std::string alloc_csv;
  // table
  std::string c_range = "3:10";
  // fixtures
  std::string which = "thm3";
  int c = 3;
  // oracle
  int granularity = 4;
  std::uint64_t node_budget = kOracleNodeBudget;
  // roundtrip
  std::vector<std::string> payloads;
  std::string state_file;
  std::vector<int> read_set;
  std::string store_out;
  std::string store_in;
  std::string decoded_out;

  Params params() const;
  bool operator==(const RunConfig&) const = default;
};

Json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const Json& j);

// Parses argv-style arguments (without the program name) and runs the
// subcommand. Reports go to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_fixtures(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_roundtrip(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mvcode::cli

#endif  // MVCODE_TOOLS_CLI_HPP_
