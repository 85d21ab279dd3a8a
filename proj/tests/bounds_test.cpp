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

#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "mvcode/serialize.hpp"

namespace mvcode {
namespace {

// Minimal exact fraction for re-deriving the closed forms in test code.
struct Frac {
  long long num, den;
  Frac(long long n, long long d = 1) : num(n), den(d) {
    if (den < 0) num = -num, den = -den;
    const long long g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  friend Frac operator-(Frac a, Frac b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
  Rational r() const { return Rational(num, den); }
};

Frac frac_max(Frac a, Frac b) { return a < b ? b : a; }
Frac frac_min(Frac a, Frac b) { return a < b ? a : b; }

long long ceil_of(long long a, long long b) { return (a + b - 1) / b; }

Frac baseline_oracle(int nu, int c) {
  const long long t = c >= (nu - 1) * (nu - 1) ? ceil_of(c - 1, nu) + 1
                                              : ceil_of(c, nu - 1);
  return frac_max(Frac(nu, c) - Frac(nu - 1, t * c), Frac(1, t));
}

double lb_eq1_oracle(double k, int nu, int c) {
  double log_binom = 0.0;
  for (int j = 1; j <= nu; ++j) log_binom += std::log2(c + nu - j) - std::log2(j);
  return nu * k / (c + nu - 1) - (nu * std::log2(nu) + log_binom) / (c + nu - 1);
}

TEST(Baseline, Examples) {
  EXPECT_EQ(baseline_split(2, 4), 3);
  EXPECT_EQ(cost_baseline(2, 4).fraction, Rational(5, 12));
  EXPECT_EQ(cost_baseline(2, 5).fraction, Rational(1, 3));
  EXPECT_EQ(cost_baseline(2, 2).fraction, Rational(3, 4));
  EXPECT_EQ(cost_baseline(2, 3).fraction, Rational(1, 2));
}

TEST(Baseline, MatchesRederivation) {
  for (int nu = 2; nu <= 6; ++nu) {
    for (int c = 1; c <= 64; ++c) {
      ASSERT_EQ(cost_baseline(nu, c).fraction, baseline_oracle(nu, c).r())
          << "nu=" << nu << " c=" << c;
    }
  }
}

TEST(NoSideInfo, Examples) {
  EXPECT_NEAR(lb_no_side_info_bits(1024, 2, 4), 409.6 - std::log2(40.0) / 5, 1e-9);
  EXPECT_NEAR(lb_no_side_info_bits(1024, 2, 4), 408.54, 0.005);
  for (int c = 1; c <= 20; ++c) {
    EXPECT_NEAR(lb_no_side_info_bits(1024, 1, c), 1024.0 / c - std::log2(c) / c, 1e-9);
  }
  for (int nu = 1; nu <= 6; ++nu) {
    for (int c = 1; c <= 40; ++c) {
      ASSERT_NEAR(lb_no_side_info_bits(4096, nu, c), lb_eq1_oracle(4096, nu, c), 1e-7);
    }
  }
  EXPECT_EQ(lb_no_side_info_leading(2, 4), Rational(2, 5));
}

TEST(NoSideInfo, CorrectionVanishes) {
  double prev = 1.0;
  for (int e : {10, 20, 30}) {
    const double k = std::ldexp(1.0, e);
    const double gap = std::abs(lb_no_side_info_bits(static_cast<std::int64_t>(k), 2, 4) / k - 0.4);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-8);
}

TEST(Achievable, Examples) {
  EXPECT_EQ(cost_split(4).fraction, Rational(3, 8));
  EXPECT_LT(cost_split(4).fraction, Rational(2, 5));
  EXPECT_EQ(cost_latest_only(2, 4).fraction, Rational(1, 2));
  EXPECT_EQ(cost_latest_only(3, 6).fraction, Rational(1, 2));
  EXPECT_THROW(cost_latest_only(3, 4), RegimeError);
  EXPECT_EQ(cost_central(4).fraction, Rational(1, 4));
  EXPECT_EQ(cost_split(5).fraction, Rational(7, 25));
}

TEST(NeighborBlindBound, Examples) {
  EXPECT_EQ(lb_neighbor_blind(4).fraction, Rational(2, 7));
  EXPECT_LE(lb_neighbor_blind(4).fraction, cost_split(4).fraction);
  EXPECT_EQ(lb_neighbor_blind(1).fraction, Rational(2));
  EXPECT_FALSE(lb_neighbor_blind(1).in_regime);
  EXPECT_TRUE(lb_neighbor_blind(4).in_regime);
  // c^2 * (2/(2c-1) - 1/c) = c/(2c-1) -> 1/2
  const int c = 2000;
  const double scaled = c * static_cast<double>(c) *
                        (lb_neighbor_blind(c).as_double() - 1.0 / c);
  EXPECT_NEAR(scaled, 0.5, 1e-3);
}

TEST(FarQuorumBound, Examples) {
  EXPECT_EQ(lb_far_quorum(3).fraction, Rational(1, 2));
  EXPECT_EQ(lb_far_quorum(6).fraction, Rational(1, 4));
  EXPECT_EQ(lb_far_quorum(7).fraction, Rational(1, 5));
  EXPECT_THROW(lb_far_quorum(2), RegimeError);
}

TEST(FarQuorumBound, EqualsSplitSweep) {
  for (int c = 3; c <= 50; ++c) {
    Frac best(0);
    for (int l = 0; l <= c - 1; ++l) {
      best = frac_max(best, frac_min(Frac(1, l + 1), Frac(2, 2 * c - l - 1)));
    }
    const Frac two_choices = frac_max(
        frac_min(Frac(1, ceil_of(2 * c, 3)), Frac(2, 2 * c - ceil_of(2 * c, 3))),
        frac_min(Frac(1, 2 * c / 3), Frac(2, 2 * c - 2 * c / 3)));
    ASSERT_EQ(lb_far_quorum(c).fraction, best.r()) << "c=" << c;
    ASSERT_EQ(lb_far_quorum(c).fraction, two_choices.r()) << "c=" << c;
    const SplitSweep sweep = sweep_far_quorum_splits(c);
    EXPECT_EQ(sweep.best, best.r());
    EXPECT_TRUE(sweep.better_than_formula.empty());
  }
  EXPECT_THROW(far_quorum_split_bound(3, 3), std::out_of_range);
}

TEST(Strictness, SplitBeatsNoSideInformation) {
  for (int c = 4; c <= 64; ++c) {
    ASSERT_LT(cost_split(c).fraction, Rational(2, c + 1)) << c;
  }
  EXPECT_EQ(cost_split(3).fraction, Rational(5, 9));
  EXPECT_GT(cost_split(3).fraction, Rational(2, 4));
}

// 1/(c-2nu+2) < nu/(c+nu-1) reduces to (nu-1)c > (2nu+1)(nu-1), so the
// two costs tie at c = 2nu+1 and the strict gap starts at c = 2nu+2.
TEST(Strictness, LatestOnlyBeatsNoSideInformation) {
  for (int nu = 2; nu <= 6; ++nu) {
    EXPECT_EQ(cost_latest_only(nu, 2 * nu + 1).fraction,
              Rational(nu, 3 * nu)) << "nu=" << nu;
    for (int c = 2 * nu + 2; c <= 64; ++c) {
      ASSERT_LT(cost_latest_only(nu, c).fraction, Rational(nu, c + nu - 1))
          << "nu=" << nu << " c=" << c;
    }
  }
}

TEST(Strictness, SplitBeatsLatestOnly) {
  for (int c = 3; c <= 64; ++c) {
    ASSERT_LT(cost_split(c).fraction, cost_latest_only(2, c).fraction) << c;
  }
}

TEST(Ordering, ChainAtTwoVersions) {
  for (int c = 4; c <= 64; ++c) {
    SCOPED_TRACE("c=" + std::to_string(c));
    ASSERT_LE(cost_central(c).fraction, lb_neighbor_blind(c).fraction);
    ASSERT_LE(lb_neighbor_blind(c).fraction, cost_split(c).fraction);
    ASSERT_LE(cost_split(c).fraction, cost_latest_only(2, c).fraction);
    if (c >= 5) {
      ASSERT_LE(cost_latest_only(2, c).fraction, cost_baseline(2, c).fraction);
    }
  }
  // At c = 4 the single-share construction is above the baseline.
  EXPECT_GT(cost_latest_only(2, 4).fraction, cost_baseline(2, 4).fraction);
  EXPECT_EQ(cost_latest_only(2, 5).fraction, cost_baseline(2, 5).fraction);
}

TEST(CompareReport, Verdicts) {
  const auto rows = compare_report(3, 5, 2, 1024);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].verdict, Verdict::kNoHelp);
  EXPECT_EQ(rows[0].lb_far_quorum->fraction, Rational(1, 2));
  EXPECT_EQ(rows[0].baseline->fraction, Rational(1, 2));
  EXPECT_EQ(rows[1].verdict, Verdict::kSideInfoGain);
  EXPECT_EQ(rows[1].baseline->fraction, Rational(5, 12));
  EXPECT_EQ(rows[1].split->fraction, Rational(3, 8));
  EXPECT_EQ(rows[1].lb_neighbor_blind->fraction, Rational(2, 7));
  EXPECT_EQ(rows[2].verdict, Verdict::kSideInfoGain);
  EXPECT_EQ(rows[2].split->fraction, Rational(7, 25));
  EXPECT_EQ(rows[2].baseline->bits(1024), Rational(1024, 3));
  for (const auto& row : rows) {
    EXPECT_LE(row.central.fraction, row.split->fraction);
    EXPECT_LE(row.central.fraction, row.latest_only->fraction);
    EXPECT_LE(row.central.fraction, row.baseline->fraction);
  }
}

TEST(CompareReport, Csv) {
  std::ostringstream os;
  write_bounds_csv(os, compare_report(2, 4, 2, 1024));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "c,nu,cost_central,lb_thm3,cost_c1,cost_c2,cost_baseline,lb_eq1,lb_thm4,verdict");
  std::getline(is, line);
  EXPECT_EQ(line.rfind("2,2,512.0000,", 0), 0u) << line;
  EXPECT_NE(line.find(",,"), std::string::npos) << line;
  std::getline(is, line);
  EXPECT_EQ(line, "3,2,341.3333,409.6000,568.8889,1024.0000,512.0000,510.8538,512.0000,no-help");
  std::getline(is, line);
  EXPECT_NE(line.find("side-info gain"), std::string::npos);
}

}  // namespace
}  // namespace mvcode
