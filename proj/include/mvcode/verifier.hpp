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

// Exhaustive and sampled correctness checks over (state, read set) pairs.
//
// Two layers: the counting layer sums allocated symbols per version over a
// read set; the bit-exact layer encodes random payloads, decodes them
// through quorum_decode and compares bytes. The counting layer is the
// oracle the bit-exact layer must agree with.

#ifndef MVCODE_VERIFIER_HPP_
#define MVCODE_VERIFIER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvcode/allocation.hpp"
#include "mvcode/codec.hpp"
#include "mvcode/model.hpp"

namespace mvcode {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultSamples = 100'000;

struct Violation {
  std::uint64_t state_id = 0;
  std::string state;
  std::vector<ServerId> read_set;
  std::string reason;
  std::string trace;
};

std::optional<Violation> check_state_counting(const AllocationRule& rule,
                                              const SystemState& s,
                                              const Params& p);
std::optional<Violation> check_state_counting(Scheme scheme,
                                              const SystemState& s,
                                              const Params& p);

// Decodes every read set from the given stores and compares against the
// messages and the counting layer.
std::optional<Violation> check_stores_bitexact(
    Scheme scheme, const SystemState& s, const Params& p,
    const std::vector<ServerStore>& stores, const MessageSet& messages);

// Random payloads derived from seed, encoded by all n servers, then
// check_stores_bitexact.
std::optional<Violation> check_state_bitexact(Scheme scheme,
                                              const SystemState& s,
                                              const Params& p,
                                              std::uint64_t seed);

enum class VerifyMode { kExhaustive, kSampled };

struct VerifyOptions {
  Scheme scheme = Scheme::kSplit;
  VerifyMode mode = VerifyMode::kExhaustive;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  bool counting = true;
  bool bitexact = true;
  int jobs = 1;
  std::uint64_t budget = kDefaultBudget;
  std::size_t max_violations = 32;
  // Replaces the scheme's allocation rule in the counting layer. Only
  // allowed with bitexact = false.
  AllocationRule rule;
};

struct VerifyReport {
  Scheme scheme = Scheme::kSplit;
  Params params;
  VerifyMode mode = VerifyMode::kExhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool counting = true;
  bool bitexact = true;
  std::uint64_t states_checked = 0;
  std::uint64_t read_sets_per_state = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first max_violations, in state order
  int denom = 1;
  int worst_case_symbols = 0;
  Rational worst_case_bits{0};
  Rational alpha_bits{0};
  std::int64_t worst_case_stored_bits = 0;  // padded, bit-exact layer only
  double elapsed_seconds = 0.0;

  bool passed() const { return violation_count == 0; }
};

// Sample index -> state, as used by sampled mode.
SystemState sampled_state(const Params& p, std::uint64_t seed,
                          std::uint64_t sample);

// Throws RegimeError for parameters outside the scheme's regime and
// BudgetError when states * C(n, c_R) exceeds the budget.
VerifyReport verify(const Params& p, const VerifyOptions& options);

std::string_view mode_name(VerifyMode mode);

}  // namespace mvcode

#endif  // MVCODE_VERIFIER_HPP_
