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

// Brute-force minimum worst-case storage over separately coded allocation
// strategies, for desk-scale instances.
//
// A strategy assigns every (server, side view) a per-version allocation in
// multiples of K/G. It is valid when every state with a complete version
// and every read set admit some m >= L_S whose allocations over the read
// set add up to K. The search returns the least per-server total B * K/G
// for which a valid strategy exists.

#ifndef MVCODE_ORACLE_HPP_
#define MVCODE_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "mvcode/allocation.hpp"
#include "mvcode/model.hpp"

namespace mvcode {

inline constexpr int kOracleMaxServers = 5;
inline constexpr int kOracleMaxGranularity = 12;
inline constexpr std::uint64_t kOracleNodeBudget = 20'000'000;

struct OracleResult {
  int granularity = 1;
  int units = 0;             // B: minimum per-server total in K/G units
  Rational fraction{0};      // B / G
  std::uint64_t nodes = 0;   // search nodes over all budgets tried
  std::vector<int> infeasible_units;  // budgets proven infeasible, ascending
  int strategy_variables = 0;
};

// Throws RegimeError outside nu in {1, 2}, n <= 5, 1 <= G <= 12, and
// BudgetError when the search exceeds node_budget.
OracleResult oracle_min_cost(const Params& p, int granularity,
                             std::uint64_t node_budget = kOracleNodeBudget);

// Whether a valid strategy with per-server total `units` exists.
bool oracle_feasible(const Params& p, int granularity, int units,
                     std::uint64_t node_budget = kOracleNodeBudget,
                     std::uint64_t* nodes = nullptr);

}  // namespace mvcode

#endif  // MVCODE_ORACLE_HPP_
