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

// Per-server storage budgets, in base symbols of K/denom bits each.
//
// kSplit and kLatestOnly decide from the server's side view alone; kCentral
// assumes full information and reads the latest complete version directly.

#ifndef MVCODE_ALLOCATION_HPP_
#define MVCODE_ALLOCATION_HPP_

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "mvcode/model.hpp"

namespace mvcode {

using Rational = boost::rational<std::int64_t>;

enum class Scheme {
  kSplit,       // two versions; K/c of the newest near-complete, rest older
  kLatestOnly,  // any nu; one share of the local candidate version
  kCentral,     // full information; K/c of the latest complete version
};

// "c1", "c2", "central".
std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

// Base-symbol count per message for the scheme under p.
int granularity(Scheme scheme, const Params& p);

// Worst-case per-server storage as a fraction of K.
Rational alpha_fraction(Scheme scheme, const Params& p);

// Throws RegimeError unless p lies in the regime the scheme is proven for.
void check_regime(Scheme scheme, const Params& p);

class Allocation {
 public:
  Allocation() = default;
  Allocation(int versions, int denom);

  int denom() const { return denom_; }
  int versions() const { return static_cast<int>(symbols_.size()); }
  int symbols(VersionId u) const { return symbols_.at(u - 1); }
  void set_symbols(VersionId u, int count) { symbols_.at(u - 1) = count; }
  int total_symbols() const;
  // symbols(u) * K / denom.
  Rational bits(VersionId u, std::int64_t message_bits) const;
  Rational total_bits(std::int64_t message_bits) const;

  bool operator==(const Allocation&) const = default;

 private:
  int denom_ = 1;
  std::vector<int> symbols_;
};

// Two-version split: granularity c^2, alpha = c+2 symbols.
Allocation alloc_split(const SideView& view, const Params& p);
// Single share of local_candidate(view): granularity c - 2(nu-1).
Allocation alloc_latest_only(const SideView& view, const Params& p);
// One of c shares of L_S, if the server holds it.
Allocation alloc_central(const SystemState& s, ServerId i, const Params& p);

// A storage rule evaluated at (state, server). The verifier is written
// against this so that deliberately broken rules can be checked too.
using AllocationRule =
    std::function<Allocation(const SystemState&, ServerId, const Params&)>;

AllocationRule rule_for(Scheme scheme);

// CSV rows "state_id,server,version,symbols,bits" for every server and
// received version of each listed state.
void write_allocation_csv(std::ostream& os, Scheme scheme, const Params& p,
                          const std::vector<SystemState>& states,
                          bool header = true);

}  // namespace mvcode

#endif  // MVCODE_ALLOCATION_HPP_
