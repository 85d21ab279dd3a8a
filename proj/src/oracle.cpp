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

#include "mvcode/oracle.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace mvcode {
namespace {

// A read-set requirement in terms of s = sum of the version-2 shares x_v of
// the servers in the set that hold both versions (their version-1 share is
// B - x_v). Satisfied when s >= at_least (version 2 decodes) or, if
// has_at_most, s <= at_most (version 1 decodes).
struct Requirement {
  std::vector<int> vars;
  int at_least = 0;
  bool has_at_most = false;
  int at_most = 0;

  auto key() const { return std::tie(vars, at_least, has_at_most, at_most); }
  bool operator<(const Requirement& o) const { return key() < o.key(); }
};

class StrategySearch {
 public:
  StrategySearch(const Params& p, int granularity, int units,
                 std::uint64_t node_budget)
      : p_(p), g_(granularity), b_(units), budget_(node_budget) {}

  bool solve(std::uint64_t* nodes) {
    const bool ok = build() && search();
    if (nodes) *nodes += nodes_;
    return ok;
  }

  int variables() const { return static_cast<int>(lo_.size()); }

 private:
  // Returns false when some requirement has no variables and fails.
  bool build() {
    const int n = p_.servers;
    const int nu = p_.versions;
    std::vector<std::vector<ServerId>> hoods(n);
    for (ServerId i = 0; i < n; ++i) hoods[i] = neighborhood(i, p_);

    // Variable per (server, view) where the server holds both versions.
    var_of_.assign(n, {});
    for (ServerId i = 0; i < n; ++i) {
      var_of_[i].assign(std::size_t{1} << (nu * hoods[i].size()), -1);
    }
    const int full = std::min(b_, g_);
    const int x_lo = std::max(0, b_ - g_);
    const int x_hi = std::min(b_, g_);

    std::set<Requirement> reqs;
    const auto sets = read_sets(n, p_.read_quorum);
    const std::uint64_t states = state_count(p_);
    std::vector<int> fixed1(n), fixed2(n), var(n);
    for (std::uint64_t id = 0; id < states; ++id) {
      const SystemState s = SystemState::from_id(p_, id);
      const auto latest = latest_complete(s, p_);
      if (!latest) continue;
      for (ServerId i = 0; i < n; ++i) {
        const VersionSet own = s[i];
        fixed1[i] = fixed2[i] = 0;
        var[i] = -1;
        if (nu == 2 && own.contains(1) && own.contains(2)) {
          std::size_t code = 0;
          for (std::size_t k = 0; k < hoods[i].size(); ++k) {
            code |= std::size_t{s[hoods[i][k]].mask()} << (nu * k);
          }
          int& v = var_of_[i][code];
          if (v < 0) {
            v = static_cast<int>(lo_.size());
            lo_.push_back(x_lo);
            hi_.push_back(x_hi);
          }
          var[i] = v;
        } else if (own.contains(1)) {
          fixed1[i] = full;
        } else if (own.contains(2)) {
          fixed2[i] = full;
        }
      }
      for (const auto& t : sets) {
        int c1 = 0, c2 = 0;
        Requirement r;
        for (ServerId i : t) {
          c1 += fixed1[i];
          c2 += fixed2[i];
          if (var[i] >= 0) r.vars.push_back(var[i]);
        }
        std::sort(r.vars.begin(), r.vars.end());
        const int k = static_cast<int>(r.vars.size());
        if (nu == 1) {
          if (c1 < g_) return false;
          continue;
        }
        r.at_least = g_ - c2;
        if (*latest == 1) {
          r.has_at_most = true;
          r.at_most = k * b_ + c1 - g_;
        }
        if (k == 0) {
          const bool ok = r.at_least <= 0 || (r.has_at_most && r.at_most >= 0);
          if (!ok) return false;
          continue;
        }
        reqs.insert(std::move(r));
      }
    }
    reqs_.assign(reqs.begin(), reqs.end());
    uses_.assign(lo_.size(), {});
    for (std::size_t r = 0; r < reqs_.size(); ++r) {
      for (int v : reqs_[r].vars) uses_[v].push_back(static_cast<int>(r));
    }
    return true;
  }

  // Bounds propagation to a fixed point; false on a wiped-out domain.
  bool propagate(std::vector<int> queue) {
    std::vector<char> queued(reqs_.size(), 0);
    for (int r : queue) queued[r] = 1;
    while (!queue.empty()) {
      const int ri = queue.back();
      queue.pop_back();
      queued[ri] = 0;
      const Requirement& r = reqs_[ri];
      int sum_lo = 0, sum_hi = 0;
      for (int v : r.vars) {
        sum_lo += lo_[v];
        sum_hi += hi_[v];
      }
      const bool newer_ok = sum_hi >= r.at_least;
      const bool older_ok = r.has_at_most && sum_lo <= r.at_most;
      if (!newer_ok && !older_ok) return false;
      if (newer_ok && older_ok) continue;
      for (int v : r.vars) {
        bool changed = false;
        if (!older_ok) {
          const int need = r.at_least - (sum_hi - hi_[v]);
          if (need > lo_[v]) {
            lo_[v] = need;
            changed = true;
          }
        } else {
          const int cap = r.at_most - (sum_lo - lo_[v]);
          if (cap < hi_[v]) {
            hi_[v] = cap;
            changed = true;
          }
        }
        if (lo_[v] > hi_[v]) return false;
        if (changed) {
          for (int other : uses_[v]) {
            if (!queued[other]) {
              queued[other] = 1;
              queue.push_back(other);
            }
          }
        }
      }
    }
    return true;
  }

  bool search() {
    std::vector<int> all(reqs_.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = static_cast<int>(r);
    if (!propagate(std::move(all))) return false;
    return descend();
  }

  bool descend() {
    if (++nodes_ > budget_) {
      throw BudgetError("oracle search exceeded " + std::to_string(budget_) +
                        " nodes");
    }
    // Most constrained open variable first.
    int best = -1;
    for (int v = 0; v < variables(); ++v) {
      if (lo_[v] == hi_[v] || uses_[v].empty()) continue;
      if (best < 0 || hi_[v] - lo_[v] < hi_[best] - lo_[best] ||
          (hi_[v] - lo_[v] == hi_[best] - lo_[best] &&
           uses_[v].size() > uses_[best].size())) {
        best = v;
      }
    }
    if (best < 0) return true;  // all fixed and every requirement holds

    const std::vector<int> saved_lo = lo_, saved_hi = hi_;
    const int lo = lo_[best], hi = hi_[best];
    for (int value = hi; value >= lo; --value) {
      lo_[best] = hi_[best] = value;
      if (propagate(uses_[best]) && descend()) return true;
      lo_ = saved_lo;
      hi_ = saved_hi;
    }
    return false;
  }

  const Params& p_;
  const int g_;
  const int b_;
  const std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<int>> var_of_;
  std::vector<int> lo_, hi_;
  std::vector<Requirement> reqs_;
  std::vector<std::vector<int>> uses_;
};

void check_oracle_regime(const Params& p, int granularity) {
  p.validate();
  if (p.versions > 2) throw RegimeError("oracle handles nu <= 2");
  if (p.servers > kOracleMaxServers) {
    throw RegimeError("oracle handles n <= " +
                      std::to_string(kOracleMaxServers));
  }
  if (granularity < 1 || granularity > kOracleMaxGranularity) {
    throw RegimeError("oracle granularity must lie in [1, " +
                      std::to_string(kOracleMaxGranularity) + "]");
  }
}

}  // namespace

bool oracle_feasible(const Params& p, int granularity, int units,
                     std::uint64_t node_budget, std::uint64_t* nodes) {
  check_oracle_regime(p, granularity);
  StrategySearch search(p, granularity, units, node_budget);
  return search.solve(nodes);
}

OracleResult oracle_min_cost(const Params& p, int granularity,
                             std::uint64_t node_budget) {
  check_oracle_regime(p, granularity);
  OracleResult result;
  result.granularity = granularity;
  // Storing every version whole is always valid.
  const int ceiling = p.versions * granularity;
  for (int units = 0; units <= ceiling; ++units) {
    StrategySearch search(p, granularity, units, node_budget);
    const bool ok = search.solve(&result.nodes);
    if (ok) {
      result.units = units;
      result.fraction = Rational(units, granularity);
      result.strategy_variables = search.variables();
      return result;
    }
    result.infeasible_units.push_back(units);
  }
  throw std::logic_error("storing every version whole must be feasible");
}

}  // namespace mvcode
