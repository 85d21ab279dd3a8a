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

#include "mvcode/fixtures.hpp"

#include <algorithm>

namespace mvcode {
namespace {

std::vector<VersionId> at_least(std::optional<VersionId> floor, int versions) {
  std::vector<VersionId> out;
  if (!floor) return out;
  for (VersionId m = *floor; m <= versions; ++m) out.push_back(m);
  return out;
}

std::vector<ServerId> range(int first, int last) {
  std::vector<ServerId> out;
  for (int i = first; i <= last; ++i) out.push_back(i);
  return out;
}

// Smallest `count` servers not in `excluded`, then `excluded` itself, sorted.
std::vector<ServerId> padded_read_set(int n, int count,
                                      const std::vector<ServerId>& excluded) {
  std::vector<ServerId> out = excluded;
  for (ServerId i = 0; i < n && count > 0; ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) {
      out.push_back(i);
      --count;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FixturePair fixture_neighbor_blind(const Params& p) {
  p.validate();
  const int n = p.servers;
  const int c = p.overlap();
  if (p.versions != 2) throw RegimeError("fixture needs nu = 2");
  if (n % 2 != 0 || n < 4) throw RegimeError("fixture needs even n >= 4");
  if (p.write_quorum != n - 1) throw RegimeError("fixture needs c_W = n-1");
  if (p.radius != n / 2 - 1) throw RegimeError("fixture needs h = n/2-1");
  if (c < 2) throw RegimeError("fixture needs c >= 2");

  const VersionSet both = VersionSet::of({1, 2});
  FixturePair f;
  f.name = "neighbor_blind";
  f.params = p;
  std::vector<VersionSet> first(n, both), second(n, both);
  first[n - 1] = VersionSet();
  second[n - 2] = VersionSet::of({1});
  second[n - 1] = VersionSet();
  f.first = SystemState(2, first);
  f.second = SystemState(2, second);

  const ServerId blind = n / 2 - 2;
  f.indistinguishable = {blind};
  f.first_allowed = {2};
  f.second_allowed = {1, 2};
  f.first_read_set = padded_read_set(n, c - 1, {blind, n - 1});
  f.second_read_sets = {padded_read_set(n, c - 2, {blind, n - 2, n - 1})};
  return f;
}

Params quorum_fixture_params(int n, int c, int radius,
                             std::int64_t message_bits) {
  if ((n + c) % 2 != 0) throw RegimeError("n + c must be even");
  Params p;
  p.servers = n;
  p.write_quorum = p.read_quorum = (n + c) / 2;
  p.versions = 2;
  p.radius = radius < 0 ? std::max(0, (n - c) / 4) : radius;
  p.message_bits = message_bits;
  return p;
}

FixturePair fixture_far_quorum(const Params& p) {
  p.validate();
  const int n = p.servers;
  const int c = p.overlap();
  if (p.versions != 2) throw RegimeError("fixture needs nu = 2");
  if (c < 3) throw RegimeError("fixture needs c >= 3");
  if (p.write_quorum != p.read_quorum) {
    throw RegimeError("fixture needs c_W = c_R");
  }
  if ((n - c) % 4 != 0) throw RegimeError("(n - c)/4 must be an integer");
  const int min_n = (7 * c + 2) / 3 + 4;
  if (n < min_n) {
    throw RegimeError("fixture needs n >= ceil(7c/3) + 4 = " +
                      std::to_string(min_n));
  }
  if (p.radius > (n - c) / 4) throw RegimeError("fixture needs h <= (n-c)/4");

  // Servers [hidden_lo, hidden_hi] hold only version 2 in the first state
  // and nothing in the second; no server in [0, c) can see them.
  const int hidden_lo = (n + 3 * c) / 4;
  const int hidden_hi = (3 * n + c - 4) / 4;
  const int older_hi = (n + 3 * c - 4) / 4;
  const int older_tail = (3 * n + c) / 4;

  std::vector<VersionSet> first(n), second(n);
  for (ServerId i : range(0, c - 1)) {
    first[i].insert(2);
    second[i].insert(2);
  }
  for (ServerId i : range(hidden_lo, hidden_hi)) first[i].insert(2);
  for (ServerId i : range(0, older_hi)) {
    first[i].insert(1);
    second[i].insert(1);
  }
  for (ServerId i : range(older_tail, n - 1)) {
    first[i].insert(1);
    second[i].insert(1);
  }

  FixturePair f;
  f.name = "far_quorum";
  f.params = p;
  f.first = SystemState(2, first);
  f.second = SystemState(2, second);
  f.indistinguishable = range(0, c - 1);
  f.first_allowed = {2};
  f.second_allowed = {1, 2};
  f.first_read_set = receivers(f.first, 1);

  const int twothirds_ceil = (2 * c + 2) / 3;
  const int twothirds_floor = (2 * c) / 3;
  for (int l : {twothirds_ceil - 1, twothirds_floor - 1}) {
    if (std::find(f.second_read_set_l.begin(), f.second_read_set_l.end(), l) !=
        f.second_read_set_l.end()) {
      continue;
    }
    if (2 * c - l - 2 > older_hi) continue;
    std::vector<ServerId> r = range(0, l);
    for (ServerId i : range(hidden_lo, hidden_hi)) r.push_back(i);
    for (ServerId i : range(c, 2 * c - l - 2)) r.push_back(i);
    std::sort(r.begin(), r.end());
    f.second_read_sets.push_back(std::move(r));
    f.second_read_set_l.push_back(l);
  }
  return f;
}

FixtureCheck check_indistinguishable(const FixturePair& pair,
                                     const Params& p) {
  FixtureCheck out;
  for (ServerId i : pair.indistinguishable) {
    if (side_view(pair.first, i, p) != side_view(pair.second, i, p)) {
      out.ok = false;
      out.problems.push_back("server " + std::to_string(i) +
                             " sees different side information");
    }
  }
  if (pair.first == pair.second) return out;
  for (ServerId i = 0; i < p.servers; ++i) {
    if (std::find(pair.indistinguishable.begin(), pair.indistinguishable.end(),
                  i) != pair.indistinguishable.end()) {
      continue;
    }
    if (side_view(pair.first, i, p) != side_view(pair.second, i, p)) {
      out.distinguisher = i;
      break;
    }
  }
  if (!out.distinguisher) {
    out.ok = false;
    out.problems.push_back("no server distinguishes the two states");
  }
  return out;
}

FixtureCheck check_decode_requirements(const FixturePair& pair,
                                       const Params& p) {
  FixtureCheck out;
  const auto want_first = at_least(latest_complete(pair.first, p), p.versions);
  const auto want_second =
      at_least(latest_complete(pair.second, p), p.versions);
  if (want_first != pair.first_allowed) {
    out.ok = false;
    out.problems.push_back("first state allows a different version set");
  }
  if (want_second != pair.second_allowed) {
    out.ok = false;
    out.problems.push_back("second state allows a different version set");
  }
  return out;
}

}  // namespace mvcode
