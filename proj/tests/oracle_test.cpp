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

#include <map>

#include <gtest/gtest.h>

#include "mvcode/bounds.hpp"
#include "test_util.hpp"

namespace mvcode {
namespace {

Params small(int n, int cw, int cr, int versions, int h) {
  Params p;
  p.servers = n;
  p.write_quorum = cw;
  p.read_quorum = cr;
  p.versions = versions;
  p.radius = h;
  p.message_bits = 1024;
  return p;
}

// Literal search over every strategy: each (server, view) picks any
// per-version amounts in [0, G] with total at most B, zero for versions the
// server lacks. Only usable for a handful of variables.
class LiteralSearch {
 public:
  LiteralSearch(const Params& p, int g) : p_(p), g_(g) {
    StateEnumerator e(p, 1u << 16);
    e.for_each(0, e.size(), [&](std::uint64_t, const SystemState& s) {
      std::vector<int> vars;
      for (ServerId i = 0; i < p.servers; ++i) {
        std::vector<std::uint32_t> key;
        for (ServerId j = 0; j < p.servers; ++j) {
          if (testing::within_radius(i, j, p.servers, p.radius)) key.push_back(s[j].mask());
        }
        auto [it, fresh] = index_.try_emplace({i, key}, static_cast<int>(own_.size()));
        if (fresh) own_.push_back(s[i]);
        vars.push_back(it->second);
      }
      states_.push_back({s, vars});
    });
  }

  int min_units() {
    for (int b = 0;; ++b) {
      if (feasible(b)) return b;
    }
  }

 private:
  using Choice = std::vector<int>;  // amount per version

  std::vector<Choice> options(const VersionSet& own, int b) const {
    std::vector<Choice> out;
    Choice x(p_.versions, 0);
    std::function<void(int, int)> rec = [&](int u, int left) {
      if (u == p_.versions) {
        out.push_back(x);
        return;
      }
      const int hi = own.contains(u + 1) ? std::min(left, g_) : 0;
      for (int a = 0; a <= hi; ++a) {
        x[u] = a;
        rec(u + 1, left - a);
      }
      x[u] = 0;
    };
    rec(0, b);
    return out;
  }

  bool satisfied(const std::vector<const Choice*>& pick) const {
    const auto sets = read_sets(p_.servers, p_.read_quorum);
    for (const auto& [s, vars] : states_) {
      const auto latest = latest_complete(s, p_);
      if (!latest) continue;
      for (const auto& t : sets) {
        bool ok = false;
        for (VersionId m = *latest; m <= p_.versions && !ok; ++m) {
          int total = 0;
          for (ServerId i : t) total += (*pick[vars[i]])[m - 1];
          ok = total >= g_;
        }
        if (!ok) return false;
      }
    }
    return true;
  }

  bool feasible(int b) const {
    std::vector<std::vector<Choice>> opts;
    for (const VersionSet& own : own_) opts.push_back(options(own, b));
    std::vector<std::size_t> at(opts.size(), 0);
    std::vector<const Choice*> pick(opts.size());
    while (true) {
      for (std::size_t v = 0; v < opts.size(); ++v) pick[v] = &opts[v][at[v]];
      if (satisfied(pick)) return true;
      std::size_t v = 0;
      while (v < at.size() && ++at[v] == opts[v].size()) at[v++] = 0;
      if (v == at.size()) return false;
    }
  }

  Params p_;
  int g_;
  std::map<std::pair<ServerId, std::vector<std::uint32_t>>, int> index_;
  std::vector<VersionSet> own_;
  std::vector<std::pair<SystemState, std::vector<int>>> states_;
};

TEST(Oracle, AgreesWithLiteralSearchOnTinyRings) {
  struct Case {
    Params p;
    int g;
  };
  const std::vector<Case> cases = {
      {small(2, 2, 2, 2, 0), 1}, {small(2, 2, 2, 2, 0), 2},
      {small(2, 2, 2, 2, 0), 4}, {small(2, 2, 1, 2, 0), 2},
      {small(2, 1, 2, 2, 0), 3}, {small(3, 2, 2, 2, 0), 2},
      {small(3, 3, 3, 2, 0), 2}, {small(3, 3, 2, 2, 0), 2},
      {small(3, 2, 3, 2, 0), 2}, {small(3, 3, 3, 1, 0), 3},
  };
  for (const auto& [p, g] : cases) {
    SCOPED_TRACE("n=" + std::to_string(p.servers) + " cw=" +
                 std::to_string(p.write_quorum) + " cr=" +
                 std::to_string(p.read_quorum) + " G=" + std::to_string(g));
    LiteralSearch literal(p, g);
    EXPECT_EQ(oracle_min_cost(p, g).units, literal.min_units());
  }
}

TEST(Oracle, SingleVersionCostsKOverC) {
  for (int h = 0; h <= 2; ++h) {
    const OracleResult r = oracle_min_cost(small(4, 4, 4, 1, h), 4);
    EXPECT_EQ(r.fraction, Rational(1, 4)) << "h=" << h;
  }
}

TEST(Oracle, FullInformationCostsKOverC) {
  EXPECT_EQ(oracle_min_cost(small(4, 4, 4, 2, 2), 4).fraction, Rational(1, 4));
  EXPECT_EQ(oracle_min_cost(small(4, 4, 4, 2, 2), 12).fraction, Rational(1, 4));
  EXPECT_EQ(oracle_min_cost(small(5, 4, 4, 2, 2), 6).fraction, Rational(1, 3));
}

TEST(Oracle, NoSideInformationAtFourServers) {
  const Params p = small(4, 4, 4, 2, 0);
  const OracleResult coarse = oracle_min_cost(p, 4);
  EXPECT_EQ(coarse.fraction, Rational(1, 2));
  const OracleResult fine = oracle_min_cost(p, 12);
  EXPECT_EQ(fine.fraction, Rational(5, 12));
  const double bits = boost::rational_cast<double>(fine.fraction) * 1024;
  EXPECT_GE(bits, lb_no_side_info_bits(1024, 2, 4));
  EXPECT_LE(fine.fraction, cost_baseline(2, 4).fraction);
}

TEST(Oracle, MonotoneInRadius) {
  for (int g : {2, 3, 4, 6, 12}) {
    for (const auto& [n, cw, cr] : std::vector<std::tuple<int, int, int>>{
             {4, 4, 4}, {4, 3, 3}, {4, 4, 3}, {5, 4, 4}, {5, 5, 4}}) {
      Rational prev{1000};
      for (int h = 0; 2 * (h - 1) + 1 < n; ++h) {
        const Rational r = oracle_min_cost(small(n, cw, cr, 2, h), g).fraction;
        EXPECT_LE(r, prev) << "n=" << n << " cw=" << cw << " cr=" << cr
                           << " G=" << g << " h=" << h;
        prev = r;
      }
    }
  }
}

TEST(Oracle, ResultIsTight) {
  const Params p = small(4, 4, 4, 2, 1);
  const OracleResult r = oracle_min_cost(p, 6);
  EXPECT_TRUE(oracle_feasible(p, 6, r.units));
  for (int b : r.infeasible_units) EXPECT_FALSE(oracle_feasible(p, 6, b));
  EXPECT_EQ(static_cast<int>(r.infeasible_units.size()), r.units);
  EXPECT_GT(r.strategy_variables, 0);
}

TEST(Oracle, Errors) {
  EXPECT_THROW(oracle_min_cost(small(6, 6, 6, 2, 0), 4), RegimeError);
  EXPECT_THROW(oracle_min_cost(small(4, 4, 4, 3, 0), 4), RegimeError);
  EXPECT_THROW(oracle_min_cost(small(4, 4, 4, 2, 0), 13), RegimeError);
  EXPECT_THROW(oracle_min_cost(small(4, 4, 4, 2, 0), 0), RegimeError);
  EXPECT_THROW(oracle_min_cost(small(5, 4, 4, 2, 1), 12, 3), BudgetError);
}

}  // namespace
}  // namespace mvcode
