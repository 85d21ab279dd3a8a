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

#include "mvcode/model.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <sstream>

namespace mvcode {

int Params::neighborhood_size() const {
  return std::min(2 * radius + 1, servers);
}

void Params::validate() const {
  auto fail = [](const std::string& what) { throw RegimeError(what); };
  if (servers < 1) fail("n must be at least 1");
  if (write_quorum < 1 || write_quorum > servers) fail("c_W must lie in [1, n]");
  if (read_quorum < 1 || read_quorum > servers) fail("c_R must lie in [1, n]");
  if (overlap() < 1) fail("c = c_W + c_R - n must be at least 1");
  if (versions < 1 || versions > kMaxVersions) {
    fail("nu must lie in [1, " + std::to_string(kMaxVersions) + "]");
  }
  if (radius < 0) fail("h must be non-negative");
  if (message_bits < 1) fail("K must be at least 1");
}

VersionSet VersionSet::of(std::initializer_list<VersionId> ids) {
  VersionSet set;
  for (VersionId u : ids) set.insert(u);
  return set;
}

void VersionSet::insert(VersionId u) {
  if (u < 1 || u > kMaxVersions) {
    throw std::out_of_range("version id out of range: " + std::to_string(u));
  }
  mask_ |= 1u << (u - 1);
}

void VersionSet::erase(VersionId u) {
  if (u >= 1 && u <= kMaxVersions) mask_ &= ~(1u << (u - 1));
}

int VersionSet::size() const { return std::popcount(mask_); }

std::optional<VersionId> VersionSet::max() const {
  if (mask_ == 0) return std::nullopt;
  return 32 - std::countl_zero(mask_);
}

std::vector<VersionId> VersionSet::ids() const {
  std::vector<VersionId> out;
  for (VersionId u = 1; u <= kMaxVersions; ++u) {
    if (contains(u)) out.push_back(u);
  }
  return out;
}

SystemState::SystemState(int versions, std::vector<VersionSet> servers)
    : versions_(versions), servers_(std::move(servers)) {
  if (versions_ < 1 || versions_ > kMaxVersions) {
    throw RegimeError("nu out of range");
  }
  const std::uint32_t limit = 1u << versions_;
  for (const VersionSet& v : servers_) {
    if (v.mask() >= limit) {
      throw std::out_of_range("server state names a version above nu");
    }
  }
}

SystemState SystemState::empty(const Params& p) {
  return SystemState(p.versions, std::vector<VersionSet>(p.servers));
}

SystemState SystemState::from_id(const Params& p, std::uint64_t id) {
  std::vector<VersionSet> servers(p.servers);
  const std::uint64_t radix = 1ull << p.versions;
  for (ServerId i = 0; i < p.servers; ++i) {
    servers[i] = VersionSet(static_cast<std::uint32_t>(id % radix));
    id /= radix;
  }
  return SystemState(p.versions, std::move(servers));
}

std::uint64_t SystemState::id() const {
  std::uint64_t id = 0;
  for (ServerId i = size() - 1; i >= 0; --i) {
    id = (id << versions_) | servers_[i].mask();
  }
  return id;
}

const VersionSet& SideView::own() const {
  for (const auto& [id, set] : window) {
    if (id == center) return set;
  }
  throw std::logic_error("side view is missing its own server");
}

int SideView::receivers_in_window(VersionId u) const {
  int count = 0;
  for (const auto& entry : window) count += entry.second.contains(u);
  return count;
}

std::vector<ServerId> neighborhood(ServerId i, const Params& p) {
  if (i < 0 || i >= p.servers) {
    throw std::out_of_range("invalid server id " + std::to_string(i));
  }
  std::vector<ServerId> out;
  if (p.full_information()) {
    out.resize(p.servers);
    for (ServerId j = 0; j < p.servers; ++j) out[j] = j;
    return out;
  }
  for (int d = -p.radius; d <= p.radius; ++d) {
    out.push_back(((i + d) % p.servers + p.servers) % p.servers);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SideView side_view(const SystemState& s, ServerId i, const Params& p) {
  if (s.size() != p.servers) {
    throw std::invalid_argument("state length differs from n");
  }
  SideView view;
  view.center = i;
  for (ServerId j : neighborhood(i, p)) view.window.emplace_back(j, s[j]);
  return view;
}

std::vector<ServerId> receivers(const SystemState& s, VersionId u) {
  std::vector<ServerId> out;
  for (ServerId i = 0; i < s.size(); ++i) {
    if (s[i].contains(u)) out.push_back(i);
  }
  return out;
}

std::vector<VersionId> complete_versions(const SystemState& s,
                                         const Params& p) {
  std::vector<VersionId> out;
  for (VersionId u = 1; u <= p.versions; ++u) {
    int count = 0;
    for (const VersionSet& v : s.servers()) count += v.contains(u);
    if (count >= p.write_quorum) out.push_back(u);
  }
  return out;
}

std::optional<VersionId> latest_complete(const SystemState& s,
                                         const Params& p) {
  for (VersionId u = p.versions; u >= 1; --u) {
    int count = 0;
    for (const VersionSet& v : s.servers()) count += v.contains(u);
    if (count >= p.write_quorum) return u;
  }
  return std::nullopt;
}

std::optional<VersionId> local_candidate(const SideView& view,
                                         const Params& p) {
  const VersionSet& own = view.own();
  for (VersionId u = p.versions; u >= 1; --u) {
    if (own.contains(u) && view.receivers_in_window(u) >= p.servers - 2) {
      return u;
    }
  }
  return std::nullopt;
}

std::optional<VersionId> local_candidate(const SystemState& s, ServerId i,
                                         const Params& p) {
  return local_candidate(side_view(s, i, p), p);
}

std::uint64_t state_count(const Params& p) {
  const int bits = p.servers * p.versions;
  if (bits >= 64) {
    throw BudgetError("(2^nu)^n does not fit in 64 bits");
  }
  return 1ull << bits;
}

StateEnumerator::StateEnumerator(const Params& p, std::uint64_t budget)
    : params_(p), count_(state_count(p)) {
  if (count_ > budget) {
    throw BudgetError("state space of " + std::to_string(count_) +
                      " exceeds budget " + std::to_string(budget));
  }
}

SystemState random_state(const Params& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0,
                                                    (1u << p.versions) - 1);
  std::vector<VersionSet> servers(p.servers);
  for (VersionSet& v : servers) v = VersionSet(pick(rng));
  return SystemState(p.versions, std::move(servers));
}

std::vector<std::vector<ServerId>> read_sets(int n, int k) {
  std::vector<std::vector<ServerId>> out;
  if (k < 0 || k > n) return out;
  std::vector<ServerId> cur(k);
  for (int j = 0; j < k; ++j) cur[j] = j;
  while (true) {
    out.push_back(cur);
    int j = k - 1;
    while (j >= 0 && cur[j] == n - k + j) --j;
    if (j < 0) break;
    ++cur[j];
    for (int t = j + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::string to_string(const SystemState& s) {
  std::ostringstream os;
  os << '[';
  for (ServerId i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << '[';
    bool first = true;
    for (VersionId u : s[i].ids()) {
      if (!first) os << ',';
      os << u;
      first = false;
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace mvcode
