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

#include "mvcode/codec.hpp"

#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "mvcode/fixtures.hpp"
#include "mvcode/gf65536.hpp"
#include "test_util.hpp"

namespace mvcode {
namespace {

using testing::Gen;
using testing::make_state;
using testing::ring_params;

// Shift-and-add multiplication modulo x^16 + x^12 + x^3 + x + 1.
std::uint16_t slow_mul(std::uint16_t a, std::uint16_t b) {
  std::uint32_t acc = 0;
  std::uint32_t x = a;
  for (int bit = 0; bit < 16; ++bit) {
    if ((b >> bit) & 1u) acc ^= x << bit;
  }
  for (int bit = 31; bit >= 16; --bit) {
    if ((acc >> bit) & 1u) acc ^= 0x1100Bu << (bit - 16);
  }
  return static_cast<std::uint16_t>(acc);
}

std::vector<std::uint32_t> iota_indices(int count, std::uint32_t start = 0) {
  std::vector<std::uint32_t> out(count);
  std::iota(out.begin(), out.end(), start);
  return out;
}

Params full_info(Params p) {
  p.radius = p.servers / 2;
  return p;
}

TEST(Field, MultiplicationMatchesReference) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100000; ++k) {
    const auto a = static_cast<gf::Element>(rng());
    const auto b = static_cast<gf::Element>(rng());
    ASSERT_EQ(gf::mul(a, b), slow_mul(a, b)) << a << " * " << b;
  }
}

TEST(Field, EveryNonzeroElementHasAnInverse) {
  for (std::uint32_t a = 1; a < gf::kOrder; ++a) {
    ASSERT_EQ(gf::mul(static_cast<gf::Element>(a), gf::inv(static_cast<gf::Element>(a))), 1);
  }
  EXPECT_THROW(gf::inv(0), std::domain_error);
}

TEST(MdsSpecType, Padding) {
  const MdsSpec a = MdsSpec::for_message(4, 1024);
  EXPECT_EQ(a.symbol_elements, 16);
  EXPECT_EQ(a.padded_bits(), 1024);
  const MdsSpec b = MdsSpec::for_message(16, 1000);
  EXPECT_EQ(b.symbol_elements, 4);
  EXPECT_EQ(b.padded_bits(), 1024);
  EXPECT_THROW(MdsSpec::for_message(0, 8), std::invalid_argument);
}

TEST(Mds, DimensionOneRepeats) {
  std::mt19937_64 rng(1);
  const Bytes msg = random_message(96, rng);
  const MdsSpec spec = MdsSpec::for_message(1, 96);
  const auto idx = std::vector<std::uint32_t>{5, 900, 65535};
  const auto coded = mds_encode(msg, spec, idx);
  ASSERT_EQ(coded.size(), 3u);
  for (const auto& sym : coded) {
    const auto d = mds_decode(std::span(&sym, 1), spec);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(d.payload, msg);
  }
}

TEST(Mds, SystematicPrefix) {
  const Bytes msg{0x12, 0x34, 0x56, 0x78};
  const MdsSpec spec = MdsSpec::for_message(2, 32);
  const auto coded = mds_encode(msg, spec, iota_indices(2));
  EXPECT_EQ(coded[0].payload, (std::vector<gf::Element>{0x1234}));
  EXPECT_EQ(coded[1].payload, (std::vector<gf::Element>{0x5678}));
}

TEST(Mds, EveryFourOfEightDecodes) {
  std::mt19937_64 rng(2024);
  const Bytes msg = random_message(1024, rng);
  const MdsSpec spec = MdsSpec::for_message(4, 1024);
  const auto coded = mds_encode(msg, spec, iota_indices(8));
  int decoded = 0, insufficient = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<CodedSymbol> pick;
    for (int j = 0; j < 8; ++j) {
      if ((mask >> j) & 1u) pick.push_back(coded[j]);
    }
    const auto d = mds_decode(pick, spec);
    if (pick.size() == 4) {
      ASSERT_TRUE(d.ok()) << "mask " << mask;
      ASSERT_EQ(d.payload, msg);
      ++decoded;
    } else if (pick.size() == 3) {
      ASSERT_EQ(d.status, DecodeStatus::kInsufficient);
      ++insufficient;
    }
  }
  EXPECT_EQ(decoded, 70);
  EXPECT_EQ(insufficient, 56);
}

TEST(Mds, RandomRoundTrips) {
  testing::for_all(31, testing::property_cases(1000), [](Gen& gen) {
    const int k = gen.range(1, 12);
    const std::int64_t bits = gen.range(1, 2048);
    const MdsSpec spec = MdsSpec::for_message(k, bits);
    const Bytes msg = random_message(bits, gen.rng());
    std::set<std::uint32_t> idx_set;
    const int count = k + gen.range(0, 6);
    while (static_cast<int>(idx_set.size()) < count) {
      idx_set.insert(static_cast<std::uint32_t>(gen.range(0, 65535)));
    }
    const std::vector<std::uint32_t> idx(idx_set.begin(), idx_set.end());
    auto coded = mds_encode(msg, spec, idx);
    std::shuffle(coded.begin(), coded.end(), gen.rng());
    coded.resize(k + gen.range(0, count - k));
    const auto d = mds_decode(coded, spec);
    ASSERT_TRUE(d.ok());
    ASSERT_EQ(d.payload, msg);
  });
}

TEST(Mds, Errors) {
  std::mt19937_64 rng(5);
  const Bytes msg = random_message(256, rng);
  const MdsSpec spec = MdsSpec::for_message(2, 256);
  const std::vector<std::uint32_t> dup{1, 1};
  const std::vector<std::uint32_t> big{1, 65536};
  EXPECT_THROW(mds_encode(msg, spec, dup), std::invalid_argument);
  EXPECT_THROW(mds_encode(msg, spec, big), std::invalid_argument);
  const Bytes short_msg(3, 0);
  EXPECT_THROW(mds_encode(short_msg, spec, iota_indices(2)), std::invalid_argument);
}

TEST(Mds, ConflictingDuplicateIsInconsistent) {
  std::mt19937_64 rng(6);
  const Bytes msg = random_message(256, rng);
  const MdsSpec spec = MdsSpec::for_message(2, 256);
  auto coded = mds_encode(msg, spec, iota_indices(3));
  CodedSymbol flipped = coded[0];
  flipped.payload[0] ^= 1;
  coded.push_back(flipped);
  EXPECT_EQ(mds_decode(coded, spec).status, DecodeStatus::kInconsistent);

  auto same = mds_encode(msg, spec, iota_indices(2));
  same.push_back(same[0]);
  EXPECT_TRUE(mds_decode(same, spec).ok());
}

TEST(Hex, RoundTrip) {
  const std::vector<gf::Element> v{0x0000, 0xbeef, 0x1234, 0xffff};
  EXPECT_EQ(to_hex(v), "0000beef1234ffff");
  EXPECT_EQ(from_hex("0000BEEF1234ffff"), v);
  EXPECT_THROW(from_hex("abc"), std::invalid_argument);
  EXPECT_THROW(from_hex("zzzz"), std::invalid_argument);
}

MessageSet messages_for(const Params& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MessageSet m;
  for (VersionId u = 1; u <= p.versions; ++u) m[u] = random_message(p.message_bits, rng);
  return m;
}

TEST(ServerEncode, Examples) {
  const Params p = ring_params(6, 2);
  const auto s = make_state(2, {{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {}});
  const MessageSet msgs = messages_for(p, 1);
  const ServerStore st = server_encode(Scheme::kSplit, s, 0, msgs, p);
  int v1 = 0, v2 = 0;
  for (const auto& sym : st.symbols) (sym.version == 1 ? v1 : v2)++;
  EXPECT_EQ(v2, 4);
  EXPECT_EQ(v1, 2);
  EXPECT_EQ(st.bits(), 6 * 1024 / 16);

  EXPECT_TRUE(server_encode(Scheme::kSplit, s, 5, {}, p).symbols.empty());

  const Params p8 = ring_params(8, 3);
  const auto s8 = make_state(3, {{1, 2}, {2}, {2}, {2}, {2}, {2}, {2}, {}});
  const MessageSet m8 = messages_for(p8, 2);
  const ServerStore st8 =
      server_encode(Scheme::kLatestOnly, s8, 0, received_messages(m8, s8[0]), p8);
  ASSERT_EQ(st8.symbols.size(), 1u);
  EXPECT_EQ(st8.symbols[0].version, 2);
  EXPECT_EQ(st8.bits(), 512);
}

TEST(ServerEncode, MessagesMustMatchReceivedVersions) {
  const Params p = ring_params(6, 2);
  const auto s = make_state(2, {{1}, {1}, {1}, {1}, {1}, {}});
  const MessageSet msgs = messages_for(p, 1);
  EXPECT_THROW(server_encode(Scheme::kSplit, s, 0, msgs, p), std::invalid_argument);
  EXPECT_THROW(server_encode(Scheme::kSplit, s, 0, {}, p), std::invalid_argument);
  EXPECT_NO_THROW(server_encode(Scheme::kSplit, s, 0, received_messages(msgs, s[0]), p));
}

struct SchemeCase {
  Scheme scheme;
  Params params;
};

std::vector<SchemeCase> scheme_cases() {
  return {{Scheme::kSplit, ring_params(6, 2)},
          {Scheme::kSplit, ring_params(6, 2, 4)},
          {Scheme::kSplit, ring_params(8, 2, 7, 777)},
          {Scheme::kLatestOnly, ring_params(6, 2)},
          {Scheme::kLatestOnly, ring_params(8, 3)},
          {Scheme::kLatestOnly, ring_params(10, 3, 8, 999)},
          {Scheme::kCentral, full_info(ring_params(6, 2))},
          {Scheme::kCentral, full_info(ring_params(5, 3, 4))}};
}

TEST(ServerEncode, IndicesDisjointAndSizesMatchAllocation) {
  testing::for_all(41, testing::property_cases(), [](Gen& gen) {
    for (const auto& [scheme, p] : scheme_cases()) {
      const SystemState s = gen.dense_state(p);
      const auto stores = encode_all(scheme, s, messages_for(p, gen.u64()), p);
      const MdsSpec spec = mds_spec(scheme, p);
      std::set<std::pair<VersionId, std::uint32_t>> seen;
      for (ServerId i = 0; i < p.servers; ++i) {
        const Allocation a = rule_for(scheme)(s, i, p);
        ASSERT_EQ(stores[i].bits(), a.total_symbols() * spec.symbol_bits());
        if (p.message_bits % (16 * a.denom()) == 0) {
          ASSERT_EQ(Rational(stores[i].bits()), a.total_bits(p.message_bits));
        }
        for (const auto& sym : stores[i].symbols) {
          ASSERT_TRUE(seen.insert({sym.version, sym.index}).second)
              << scheme_name(scheme) << " " << to_string(s);
          ASSERT_LT(sym.index, kIndexUniverse);
        }
      }
    }
  });
}

TEST(ServerEncode, DependsOnlyOnNeighborhood) {
  testing::for_all(42, testing::property_cases(), [](Gen& gen) {
    for (const auto& [scheme, p] : scheme_cases()) {
      if (scheme == Scheme::kCentral) continue;
      SystemState s = gen.dense_state(p);
      const MessageSet msgs = messages_for(p, gen.u64());
      const ServerId i = gen.range(0, p.servers - 1);
      const ServerStore before =
          server_encode(scheme, s, i, received_messages(msgs, s[i]), p);
      std::vector<ServerId> outside;
      for (ServerId j = 0; j < p.servers; ++j) {
        if (!testing::within_radius(i, j, p.servers, p.radius)) outside.push_back(j);
      }
      std::vector<VersionSet> states;
      for (ServerId j : outside) states.push_back(s[j]);
      std::shuffle(states.begin(), states.end(), gen.rng());
      for (std::size_t k = 0; k < outside.size(); ++k) s[outside[k]] = states[k];
      ASSERT_EQ(server_encode(scheme, s, i, received_messages(msgs, s[i]), p), before);
    }
  });
}

TEST(QuorumDecode, Examples) {
  const Params p = ring_params(6, 2);
  const FixturePair f = fixture_neighbor_blind(p);
  const MessageSet msgs = messages_for(p, 9);
  const auto stores1 = encode_all(Scheme::kSplit, f.first, msgs, p);
  const std::vector<ServerId> t{0, 1, 2, 3, 5};
  QuorumResult r = quorum_decode(Scheme::kSplit, f.first, t, stores1, p);
  ASSERT_EQ(r.kind, QuorumResult::Kind::kDecoded);
  EXPECT_EQ(r.version, 2);
  EXPECT_EQ(r.payload, msgs.at(2));

  const auto stores2 = encode_all(Scheme::kSplit, f.second, msgs, p);
  for (const auto& read : read_sets(6, 5)) {
    r = quorum_decode(Scheme::kSplit, f.second, read, stores2, p);
    ASSERT_EQ(r.kind, QuorumResult::Kind::kDecoded);
    EXPECT_TRUE(r.version == 1 || r.version == 2);
    EXPECT_EQ(r.payload, msgs.at(r.version));
  }

  for (const auto& [scheme, q] : scheme_cases()) {
    const SystemState empty = SystemState::empty(q);
    const auto stores = encode_all(scheme, empty, messages_for(q, 1), q);
    const auto read = read_sets(q.servers, q.read_quorum).front();
    EXPECT_EQ(quorum_decode(scheme, empty, read, stores, q).kind,
              QuorumResult::Kind::kNull);
  }
}

// Decoding succeeds on the version the symbol counts predict.
TEST(QuorumDecode, TracksCounting) {
  int pairs = 0;
  testing::for_all(43, testing::property_cases(1250), [&](Gen& gen) {
    for (const auto& [scheme, p] : scheme_cases()) {
      const SystemState s = gen.dense_state(p, 0.9);
      const MessageSet msgs = messages_for(p, gen.u64());
      const auto stores = encode_all(scheme, s, msgs, p);
      const auto t = gen.subset(p.servers, p.read_quorum);
      const auto latest = latest_complete(s, p);
      std::optional<VersionId> expect;
      if (latest) {
        for (VersionId m = p.versions; m >= *latest && !expect; --m) {
          int total = 0;
          int denom = 1;
          for (ServerId i : t) {
            const Allocation a = rule_for(scheme)(s, i, p);
            total += a.symbols(m);
            denom = a.denom();
          }
          if (total >= denom) expect = m;
        }
      }
      const QuorumResult r = quorum_decode(scheme, s, t, stores, p);
      ++pairs;
      if (!latest) {
        ASSERT_EQ(r.kind, QuorumResult::Kind::kNull);
      } else if (expect) {
        ASSERT_EQ(r.kind, QuorumResult::Kind::kDecoded) << r.detail;
        ASSERT_EQ(r.version, *expect);
        ASSERT_EQ(r.payload, msgs.at(r.version));
      } else {
        ASSERT_EQ(r.kind, QuorumResult::Kind::kContractFailure);
      }
    }
  });
  EXPECT_GE(pairs, 10000);
}

TEST(QuorumDecode, MissingStoresOutsideReadSetAreHarmless) {
  testing::for_all(44, testing::property_cases(), [](Gen& gen) {
    for (const auto& [scheme, p] : scheme_cases()) {
      const SystemState s = gen.dense_state(p, 0.95);
      const MessageSet msgs = messages_for(p, gen.u64());
      auto stores = encode_all(scheme, s, msgs, p);
      const auto t = gen.subset(p.servers, p.read_quorum);
      const QuorumResult full = quorum_decode(scheme, s, t, stores, p);
      for (ServerId drop = 0; drop < p.servers; ++drop) {
        if (std::find(t.begin(), t.end(), drop) != t.end()) continue;
        std::vector<ServerStore> fewer;
        for (const auto& st : stores) {
          if (st.server != drop) fewer.push_back(st);
        }
        const QuorumResult r = quorum_decode(scheme, s, t, fewer, p);
        ASSERT_EQ(r.kind, full.kind);
        ASSERT_EQ(r.version, full.version);
        ASSERT_EQ(r.payload, full.payload);
      }
    }
  });
}

}  // namespace
}  // namespace mvcode
