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

// System model: parameters, per-server version subsets, ring neighborhoods,
// and the completeness semantics every scheme and check is built on.
//
// Server ids are 0-based ({0, ..., n-1}); version ids are 1-based
// ({1, ..., nu}) and totally ordered, higher meaning later.

#ifndef MVCODE_MODEL_HPP_
#define MVCODE_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvcode {

// Thrown when inputs fall outside the parameter regime an operation accepts.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an enumeration or search would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ServerId = int;
using VersionId = int;

inline constexpr int kMaxVersions = 16;

struct Params {
  int servers = 0;         // n
  int write_quorum = 0;    // c_W
  int read_quorum = 0;     // c_R
  int versions = 0;        // nu
  int radius = 0;          // h, ring hops of side information
  std::int64_t message_bits = 0;  // K

  // Guaranteed number of read-quorum servers holding any complete version.
  int overlap() const { return write_quorum + read_quorum - servers; }

  // min(2h+1, n).
  int neighborhood_size() const;

  // True when every server sees the whole system (2h+1 >= n).
  bool full_information() const { return 2 * radius + 1 >= servers; }

  // Throws RegimeError unless the basic tuple invariants hold.
  void validate() const;

  bool operator==(const Params&) const = default;
};

// Subset of [nu] as a bitmask; version u lives at bit u-1.
class VersionSet {
 public:
  constexpr VersionSet() = default;
  constexpr explicit VersionSet(std::uint32_t mask) : mask_(mask) {}

  static VersionSet of(std::initializer_list<VersionId> ids);

  constexpr bool contains(VersionId u) const {
    return u >= 1 && u <= kMaxVersions && ((mask_ >> (u - 1)) & 1u) != 0;
  }
  void insert(VersionId u);
  void erase(VersionId u);
  constexpr bool empty() const { return mask_ == 0; }
  int size() const;
  // Highest version in the set, or nullopt when empty.
  std::optional<VersionId> max() const;
  std::vector<VersionId> ids() const;
  constexpr std::uint32_t mask() const { return mask_; }

  bool operator==(const VersionSet&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

// S(0..n-1): the versions each server has received.
class SystemState {
 public:
  SystemState() = default;
  SystemState(int versions, std::vector<VersionSet> servers);

  // All servers empty.
  static SystemState empty(const Params& p);
  // Mixed-radix decode of `id`, server 0 least significant.
  static SystemState from_id(const Params& p, std::uint64_t id);

  int size() const { return static_cast<int>(servers_.size()); }
  int versions() const { return versions_; }
  const VersionSet& operator[](ServerId i) const { return servers_.at(i); }
  VersionSet& operator[](ServerId i) { return servers_.at(i); }
  const std::vector<VersionSet>& servers() const { return servers_; }

  // Inverse of from_id.
  std::uint64_t id() const;

  bool operator==(const SystemState&) const = default;

 private:
  int versions_ = 0;
  std::vector<VersionSet> servers_;
};

// What server `center` knows: the states of H_center keyed by absolute id,
// sorted by id.
struct SideView {
  ServerId center = 0;
  std::vector<std::pair<ServerId, VersionSet>> window;

  const VersionSet& own() const;
  // |A_S(u) ∩ H_center|, computed from the window alone.
  int receivers_in_window(VersionId u) const;

  bool operator==(const SideView&) const = default;
};

// H_i = {i-h, ..., i+h} mod n, sorted ascending; all servers when 2h+1 >= n.
std::vector<ServerId> neighborhood(ServerId i, const Params& p);

SideView side_view(const SystemState& s, ServerId i, const Params& p);

// A_S(u).
std::vector<ServerId> receivers(const SystemState& s, VersionId u);

// C_S: versions received by at least c_W servers, ascending.
std::vector<VersionId> complete_versions(const SystemState& s,
                                         const Params& p);

// L_S = max C_S, or nullopt when no version is complete.
std::optional<VersionId> latest_complete(const SystemState& s,
                                         const Params& p);

// Latest version held by the center that at least n-2 servers of its
// neighborhood hold. Only u in S(i) qualifies.
std::optional<VersionId> local_candidate(const SideView& view,
                                         const Params& p);
std::optional<VersionId> local_candidate(const SystemState& s, ServerId i,
                                         const Params& p);

// (2^nu)^n, or throws BudgetError when it does not fit in 64 bits.
std::uint64_t state_count(const Params& p);

// Deterministic enumeration of every system state in id order. Ranges
// [begin, end) are independent, so workers can take disjoint slices.
class StateEnumerator {
 public:
  // Throws BudgetError when state_count(p) > budget.
  StateEnumerator(const Params& p, std::uint64_t budget);

  std::uint64_t size() const { return count_; }
  SystemState at(std::uint64_t id) const {
    return SystemState::from_id(params_, id);
  }

  // Calls fn(id, state) for id in [begin, end), advancing the state in place.
  template <typename Fn>
  void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    SystemState s = at(begin);
    const std::uint32_t radix = 1u << params_.versions;
    for (std::uint64_t id = begin; id < end; ++id) {
      fn(id, static_cast<const SystemState&>(s));
      for (ServerId i = 0; i < s.size(); ++i) {
        std::uint32_t next = s[i].mask() + 1;
        if (next < radix) {
          s[i] = VersionSet(next);
          break;
        }
        s[i] = VersionSet(0);
      }
    }
  }

 private:
  Params params_;
  std::uint64_t count_ = 0;
};

// Uniform over all states; a pure function of (p, seed).
SystemState random_state(const Params& p, std::uint64_t seed);

// Lexicographic k-subsets of {0, ..., n-1}.
std::vector<std::vector<ServerId>> read_sets(int n, int k);

std::uint64_t binomial(int n, int k);

std::string to_string(const SystemState& s);

}  // namespace mvcode

#endif  // MVCODE_MODEL_HPP_
