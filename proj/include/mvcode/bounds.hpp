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

// Closed-form storage costs and lower bounds, as exact fractions of K.
//
// Every value carries the regime it is proven for; evaluating outside it
// returns the formula's value with in_regime = false so sweeps stay total.
// Formulas that are undefined outside their regime throw RegimeError.

#ifndef MVCODE_BOUNDS_HPP_
#define MVCODE_BOUNDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvcode/allocation.hpp"

namespace mvcode {

struct Bound {
  Rational fraction{0};  // of K
  bool in_regime = true;

  Rational bits(std::int64_t message_bits) const {
    return fraction * message_bits;
  }
  double as_double() const {
    return boost::rational_cast<double>(fraction);
  }
};

// Decentralized lower bound without side information:
// nu K/(c+nu-1) - log2(nu^nu * C(c+nu-1, nu)) / (c+nu-1), in bits.
double lb_no_side_info_bits(std::int64_t message_bits, int versions, int c);
// Its leading term nu/(c+nu-1).
Rational lb_no_side_info_leading(int versions, int c);

// t of the decentralized construction.
int baseline_split(int versions, int c);
// max{nu/c - (nu-1)/(tc), 1/t}; needs nu >= 2.
Bound cost_baseline(int versions, int c);

Bound cost_split(int c);                   // (c+2)/c^2, nu = 2
Bound cost_latest_only(int versions, int c);  // 1/(c - 2(nu-1)), c >= 2nu-1
Bound cost_central(int c);                 // 1/c

// 2/(2c-1); meaningful for the neighbor-blind regime with c >= 2.
Bound lb_neighbor_blind(int c);
// max{1/ceil(2c/3), 2/(2c - floor(2c/3))}; needs c >= 3.
Bound lb_far_quorum(int c);

// min{1/(l+1), 2/(2c-l-1)}: the bound one split l in [0, c-1] yields.
Rational far_quorum_split_bound(int c, int l);

struct SplitSweep {
  Rational best{0};
  int best_l = 0;
  // l values beating both of the closed form's choices.
  std::vector<int> better_than_formula;
};
SplitSweep sweep_far_quorum_splits(int c);

enum class Verdict { kNone, kSideInfoGain, kNoHelp };
std::string_view verdict_name(Verdict v);

struct BoundRow {
  int c = 0;
  int versions = 0;
  std::int64_t message_bits = 0;
  Bound central;
  std::optional<Bound> lb_neighbor_blind;
  std::optional<Bound> split;
  std::optional<Bound> latest_only;
  std::optional<Bound> baseline;
  double lb_no_side_info_bits = 0.0;
  std::optional<Bound> lb_far_quorum;
  Verdict verdict = Verdict::kNone;
};

// One row per c in [c_first, c_last]. Throws std::invalid_argument on an
// empty or non-positive range.
std::vector<BoundRow> compare_report(int c_first, int c_last, int versions,
                                     std::int64_t message_bits);

}  // namespace mvcode

#endif  // MVCODE_BOUNDS_HPP_
