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

// JSON and CSV forms of states, reports, fixtures, stores and bound tables.
//
// A system state is a JSON array of n arrays of version ids, e.g.
// [[1,2],[1],[]]. Server stores are (version, index, hex payload) triples.

#ifndef MVCODE_SERIALIZE_HPP_
#define MVCODE_SERIALIZE_HPP_

#include <ostream>
#include <vector>

#include "json.hpp"
#include "mvcode/bounds.hpp"
#include "mvcode/codec.hpp"
#include "mvcode/fixtures.hpp"
#include "mvcode/model.hpp"
#include "mvcode/oracle.hpp"
#include "mvcode/verifier.hpp"

namespace mvcode {

using Json = nlohmann::ordered_json;

Json state_to_json(const SystemState& s);
// Throws std::invalid_argument on malformed input or ids outside [1, nu].
SystemState state_from_json(const Json& j, int versions);

Json params_to_json(const Params& p);
Params params_from_json(const Json& j);

std::string rational_string(const Rational& r);

// Deterministic: omits wall-clock time.
Json report_to_json(const VerifyReport& r);
Json fixture_to_json(const FixturePair& f);
Json oracle_to_json(const OracleResult& r, const Params& p);

struct StoreFile {
  Scheme scheme = Scheme::kSplit;
  Params params;
  SystemState state;
  std::vector<ServerStore> stores;
};
Json stores_to_json(const StoreFile& f);
StoreFile stores_from_json(const Json& j);

// Fixed columns: c,nu,cost_central,lb_thm3,cost_c1,cost_c2,cost_baseline,
// lb_eq1,lb_thm4,verdict. Costs are fractions of K; lb_eq1 is in bits.
void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows);
Json bounds_to_json(const std::vector<BoundRow>& rows);

}  // namespace mvcode

#endif  // MVCODE_SERIALIZE_HPP_
