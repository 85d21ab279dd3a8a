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

// State pairs from the two converse arguments. In each pair some servers see
// identical side information in both states while the decoding requirement
// differs: the first state forces version 2, the second allows 1 or 2.

#ifndef MVCODE_FIXTURES_HPP_
#define MVCODE_FIXTURES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mvcode/model.hpp"

namespace mvcode {

struct FixturePair {
  std::string name;
  Params params;
  SystemState first;
  SystemState second;
  std::vector<ServerId> indistinguishable;
  // Versions a decoder may return in each state.
  std::vector<VersionId> first_allowed;
  std::vector<VersionId> second_allowed;
  // Read sets the argument uses in each state; the second may be one per
  // choice of the split parameter l (second_read_set_l).
  std::vector<ServerId> first_read_set;
  std::vector<std::vector<ServerId>> second_read_sets;
  std::vector<int> second_read_set_l;
};

// Needs nu = 2, n even and >= 4, c_W = n-1, h = n/2-1, c >= 2.
FixturePair fixture_neighbor_blind(const Params& p);

// Params for the quorum-overlap fixture: c_W = c_R = (n+c)/2, nu = 2.
// radius < 0 picks the largest allowed, (n-c)/4.
Params quorum_fixture_params(int n, int c, int radius = -1,
                             std::int64_t message_bits = 1024);

// Needs nu = 2, c >= 3, c_W = c_R = (n+c)/2, (n-c)/4 integral,
// n >= ceil(7c/3)+4, h <= (n-c)/4.
FixturePair fixture_far_quorum(const Params& p);

struct FixtureCheck {
  bool ok = true;
  std::vector<std::string> problems;
  // An unlisted server whose view differs, when the states differ.
  std::optional<ServerId> distinguisher;
};

// Side views of every listed server agree across the two states, and some
// unlisted server tells them apart unless the states are identical.
FixtureCheck check_indistinguishable(const FixturePair& pair, const Params& p);

// The allowed-version lists match {m : m >= L_S} for both states.
FixtureCheck check_decode_requirements(const FixturePair& pair,
                                       const Params& p);

}  // namespace mvcode

#endif  // MVCODE_FIXTURES_HPP_
