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

#include "mvcode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvcode {
namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

double lb_no_side_info_bits(std::int64_t message_bits, int versions, int c) {
  if (versions < 1 || c < 1) throw RegimeError("need nu >= 1 and c >= 1");
  const double span = c + versions - 1;
  const double log2_binom =
      (std::lgamma(span + 1) - std::lgamma(versions + 1.0) -
       std::lgamma(span - versions + 1)) /
      std::log(2.0);
  const double log2_term = versions * std::log2(versions) + log2_binom;
  return versions * static_cast<double>(message_bits) / span - log2_term / span;
}

Rational lb_no_side_info_leading(int versions, int c) {
  return Rational(versions, c + versions - 1);
}

int baseline_split(int versions, int c) {
  if (versions < 2) throw RegimeError("baseline cost needs nu >= 2");
  if (c < 1) throw RegimeError("baseline cost needs c >= 1");
  if (c >= (versions - 1) * (versions - 1)) {
    return ceil_div(c - 1, versions) + 1;
  }
  return ceil_div(c, versions - 1);
}

Bound cost_baseline(int versions, int c) {
  const int t = baseline_split(versions, c);
  const Rational spread =
      Rational(versions, c) - Rational(versions - 1, std::int64_t{t} * c);
  return {std::max(spread, Rational(1, t)), true};
}

Bound cost_split(int c) {
  if (c < 1) throw RegimeError("c must be at least 1");
  return {Rational(c + 2, std::int64_t{c} * c), true};
}

Bound cost_latest_only(int versions, int c) {
  if (versions < 1 || c < 2 * versions - 1) {
    throw RegimeError("latest-only cost needs c >= 2*nu - 1");
  }
  return {Rational(1, c - 2 * (versions - 1)), true};
}

Bound cost_central(int c) {
  if (c < 1) throw RegimeError("c must be at least 1");
  return {Rational(1, c), true};
}

Bound lb_neighbor_blind(int c) {
  if (c < 1) throw RegimeError("c must be at least 1");
  return {Rational(2, 2 * c - 1), c >= 2};
}

Bound lb_far_quorum(int c) {
  if (c < 3) throw RegimeError("far-quorum bound needs c >= 3");
  const int up = ceil_div(2 * c, 3);
  const int down = (2 * c) / 3;
  return {std::max(Rational(1, up), Rational(2, 2 * c - down)), true};
}

Rational far_quorum_split_bound(int c, int l) {
  if (l < 0 || l > c - 1) throw std::out_of_range("l must lie in [0, c-1]");
  return std::min(Rational(1, l + 1), Rational(2, 2 * c - l - 1));
}

SplitSweep sweep_far_quorum_splits(int c) {
  if (c < 1) throw RegimeError("c must be at least 1");
  SplitSweep out;
  const Rational formula = c >= 3 ? lb_far_quorum(c).fraction : Rational(0);
  for (int l = 0; l <= c - 1; ++l) {
    const Rational v = far_quorum_split_bound(c, l);
    if (v > out.best) {
      out.best = v;
      out.best_l = l;
    }
    if (c >= 3 && v > formula) out.better_than_formula.push_back(l);
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kNone: return "";
    case Verdict::kSideInfoGain: return "side-info gain";
    case Verdict::kNoHelp: return "no-help";
  }
  return "";
}

std::vector<BoundRow> compare_report(int c_first, int c_last, int versions,
                                     std::int64_t message_bits) {
  if (c_first < 1 || c_last < c_first) {
    throw std::invalid_argument("c range must be non-empty and positive");
  }
  if (versions < 1) throw std::invalid_argument("nu must be at least 1");
  std::vector<BoundRow> rows;
  for (int c = c_first; c <= c_last; ++c) {
    BoundRow row;
    row.c = c;
    row.versions = versions;
    row.message_bits = message_bits;
    row.central = cost_central(c);
    row.lb_no_side_info_bits = lb_no_side_info_bits(message_bits, versions, c);
    if (versions == 2) {
      row.lb_neighbor_blind = lb_neighbor_blind(c);
      row.split = cost_split(c);
      if (c >= 3) row.lb_far_quorum = lb_far_quorum(c);
    }
    if (c >= 2 * versions - 1) row.latest_only = cost_latest_only(versions, c);
    if (versions >= 2) row.baseline = cost_baseline(versions, c);

    const std::optional<Bound>& achievable =
        row.split ? row.split : row.latest_only;
    if (row.lb_far_quorum && row.baseline &&
        row.lb_far_quorum->fraction >= row.baseline->fraction) {
      row.verdict = Verdict::kNoHelp;
    } else if (achievable && achievable->fraction <
                                 lb_no_side_info_leading(versions, c)) {
      row.verdict = Verdict::kSideInfoGain;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mvcode
