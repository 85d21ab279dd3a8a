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

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mvcode {
namespace {

using gf::Element;

// Lagrange interpolation through (points[s], values[s]) evaluated at each
// target, using barycentric weights so each target costs O(k) per element.
std::vector<std::vector<Element>> interpolate(
    std::span<const Element> points,
    std::span<const std::vector<Element>* const> values,
    std::span<const Element> targets, int elements) {
  const std::size_t k = points.size();
  std::vector<Element> weights(k);
  for (std::size_t s = 0; s < k; ++s) {
    Element prod = 1;
    for (std::size_t t = 0; t < k; ++t) {
      if (t != s) prod = gf::mul(prod, gf::add(points[s], points[t]));
    }
    weights[s] = gf::inv(prod);
  }

  std::vector<std::vector<Element>> out;
  out.reserve(targets.size());
  std::vector<Element> coef(k);
  for (Element x : targets) {
    auto hit = std::find(points.begin(), points.end(), x);
    if (hit != points.end()) {
      out.push_back(*values[hit - points.begin()]);
      continue;
    }
    Element span_prod = 1;
    for (Element p : points) span_prod = gf::mul(span_prod, gf::add(x, p));
    for (std::size_t s = 0; s < k; ++s) {
      coef[s] = gf::mul(span_prod,
                        gf::div(weights[s], gf::add(x, points[s])));
    }
    std::vector<Element> y(elements, 0);
    for (std::size_t s = 0; s < k; ++s) {
      if (coef[s] == 0) continue;
      const std::vector<Element>& v = *values[s];
      for (int e = 0; e < elements; ++e) {
        y[e] = gf::add(y[e], gf::mul(coef[s], v[e]));
      }
    }
    out.push_back(std::move(y));
  }
  return out;
}

// Splits a K-bit message into k symbols of big-endian 16-bit elements,
// zero-padding past K.
std::vector<std::vector<Element>> split_message(
    std::span<const std::uint8_t> message, const MdsSpec& spec) {
  auto bit_at = [&](std::int64_t b) -> unsigned {
    if (b >= spec.message_bits) return 0;
    return (message[b / 8] >> (7 - b % 8)) & 1u;
  };
  std::vector<std::vector<Element>> symbols(
      spec.dimension, std::vector<Element>(spec.symbol_elements, 0));
  std::int64_t bit = 0;
  for (auto& sym : symbols) {
    for (Element& e : sym) {
      unsigned v = 0;
      for (int j = 0; j < 16; ++j) v = (v << 1) | bit_at(bit++);
      e = static_cast<Element>(v);
    }
  }
  return symbols;
}

Bytes join_message(const std::vector<std::vector<Element>>& symbols,
                   const MdsSpec& spec) {
  Bytes out(message_bytes(spec.message_bits), 0);
  std::int64_t bit = 0;
  for (const auto& sym : symbols) {
    for (Element e : sym) {
      for (int j = 15; j >= 0; --j, ++bit) {
        if (bit >= spec.message_bits) return out;
        if ((e >> j) & 1u) out[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
      }
    }
  }
  return out;
}

std::vector<Element> systematic_points(int k) {
  std::vector<Element> points(k);
  for (int r = 0; r < k; ++r) points[r] = static_cast<Element>(r);
  return points;
}

}  // namespace

MdsSpec MdsSpec::for_message(int dimension, std::int64_t message_bits) {
  if (dimension < 1) throw std::invalid_argument("code dimension must be >= 1");
  if (message_bits < 1) throw std::invalid_argument("message must be >= 1 bit");
  MdsSpec spec;
  spec.dimension = dimension;
  spec.message_bits = message_bits;
  const std::int64_t per_symbol = 16ll * dimension;
  spec.symbol_elements =
      static_cast<int>((message_bits + per_symbol - 1) / per_symbol);
  return spec;
}

std::size_t message_bytes(std::int64_t message_bits) {
  return static_cast<std::size_t>((message_bits + 7) / 8);
}

Bytes random_message(std::int64_t message_bits, std::mt19937_64& rng) {
  Bytes out(message_bytes(message_bits));
  for (auto& b : out) b = static_cast<std::uint8_t>(rng() & 0xFF);
  if (message_bits % 8 != 0) {
    out.back() &= static_cast<std::uint8_t>(0xFF00u >> (message_bits % 8));
  }
  return out;
}

std::vector<CodedSymbol> mds_encode(std::span<const std::uint8_t> message,
                                    const MdsSpec& spec,
                                    std::span<const std::uint32_t> indices,
                                    VersionId version) {
  if (message.size() != message_bytes(spec.message_bits)) {
    throw std::invalid_argument("message length does not match K");
  }
  std::set<std::uint32_t> seen;
  std::vector<Element> targets;
  targets.reserve(indices.size());
  for (std::uint32_t j : indices) {
    if (j >= kIndexUniverse) {
      throw std::invalid_argument("symbol index outside the field");
    }
    if (!seen.insert(j).second) {
      throw std::invalid_argument("duplicate symbol index " +
                                  std::to_string(j));
    }
    targets.push_back(static_cast<Element>(j));
  }
  const auto data = split_message(message, spec);
  std::vector<const std::vector<Element>*> values;
  for (const auto& d : data) values.push_back(&d);
  const auto points = systematic_points(spec.dimension);
  auto coded = interpolate(points, values, targets, spec.symbol_elements);

  std::vector<CodedSymbol> out(indices.size());
  for (std::size_t s = 0; s < indices.size(); ++s) {
    out[s].version = version;
    out[s].index = indices[s];
    out[s].payload = std::move(coded[s]);
  }
  return out;
}

DecodeResult mds_decode(std::span<const CodedSymbol> symbols,
                        const MdsSpec& spec) {
  std::map<std::uint32_t, const CodedSymbol*> distinct;
  for (const CodedSymbol& sym : symbols) {
    if (static_cast<int>(sym.payload.size()) != spec.symbol_elements) {
      return {DecodeStatus::kInconsistent, {}};
    }
    auto [it, inserted] = distinct.emplace(sym.index, &sym);
    if (!inserted && it->second->payload != sym.payload) {
      return {DecodeStatus::kInconsistent, {}};
    }
  }
  if (static_cast<int>(distinct.size()) < spec.dimension) {
    return {DecodeStatus::kInsufficient, {}};
  }
  std::vector<Element> points;
  std::vector<const std::vector<Element>*> values;
  for (const auto& [index, sym] : distinct) {
    if (static_cast<int>(points.size()) == spec.dimension) break;
    points.push_back(static_cast<Element>(index));
    values.push_back(&sym->payload);
  }
  const auto data = interpolate(points, values,
                                systematic_points(spec.dimension),
                                spec.symbol_elements);
  return {DecodeStatus::kOk, join_message(data, spec)};
}

std::int64_t ServerStore::bits() const {
  std::int64_t total = 0;
  for (const CodedSymbol& s : symbols) total += s.bits();
  return total;
}

MdsSpec mds_spec(Scheme scheme, const Params& p) {
  return MdsSpec::for_message(granularity(scheme, p), p.message_bits);
}

int slots_per_server(Scheme scheme, const Params& p, VersionId u) {
  const int c = p.overlap();
  switch (scheme) {
    case Scheme::kSplit:
      return (p.versions == 2 && u == 1) ? c + 2 : c;
    case Scheme::kLatestOnly:
    case Scheme::kCentral:
      return 1;
  }
  return 1;
}

ServerStore server_encode(Scheme scheme, const SystemState& s, ServerId i,
                          const MessageSet& received, const Params& p) {
  const VersionSet& own = s[i];
  for (const auto& [u, msg] : received) {
    if (!own.contains(u)) {
      throw std::invalid_argument("message supplied for version " +
                                  std::to_string(u) +
                                  " that the server did not receive");
    }
  }
  for (VersionId u : own.ids()) {
    if (!received.contains(u)) {
      throw std::invalid_argument("missing message for received version " +
                                  std::to_string(u));
    }
  }
  const Allocation a = rule_for(scheme)(s, i, p);
  const MdsSpec spec = mds_spec(scheme, p);
  ServerStore store;
  store.server = i;
  for (VersionId u = p.versions; u >= 1; --u) {
    const int count = a.symbols(u);
    if (count == 0) continue;
    const int slots = slots_per_server(scheme, p, u);
    if (count > slots) throw std::logic_error("allocation exceeds slots");
    std::vector<std::uint32_t> indices(count);
    for (int slot = 0; slot < count; ++slot) {
      indices[slot] = static_cast<std::uint32_t>(i * slots + slot);
    }
    auto coded = mds_encode(received.at(u), spec, indices, u);
    for (auto& c : coded) store.symbols.push_back(std::move(c));
  }
  return store;
}

MessageSet received_messages(const MessageSet& messages, const VersionSet& v) {
  MessageSet out;
  for (VersionId u : v.ids()) out.emplace(u, messages.at(u));
  return out;
}

std::vector<ServerStore> encode_all(Scheme scheme, const SystemState& s,
                                    const MessageSet& messages,
                                    const Params& p) {
  std::vector<ServerStore> stores;
  stores.reserve(p.servers);
  for (ServerId i = 0; i < p.servers; ++i) {
    stores.push_back(server_encode(scheme, s, i,
                                   received_messages(messages, s[i]), p));
  }
  return stores;
}

QuorumResult quorum_decode(Scheme scheme, const SystemState& s,
                           std::span<const ServerId> read_set,
                           std::span<const ServerStore> stores,
                           const Params& p) {
  QuorumResult result;
  const auto latest = latest_complete(s, p);
  if (!latest) return result;
  const MdsSpec spec = mds_spec(scheme, p);
  for (VersionId m = p.versions; m >= *latest; --m) {
    std::vector<CodedSymbol> gathered;
    for (ServerId t : read_set) {
      auto store = std::find_if(stores.begin(), stores.end(),
                                [t](const ServerStore& st) {
                                  return st.server == t;
                                });
      if (store == stores.end()) continue;
      for (const CodedSymbol& sym : store->symbols) {
        if (sym.version == m) gathered.push_back(sym);
      }
    }
    DecodeResult d = mds_decode(gathered, spec);
    if (d.status == DecodeStatus::kInsufficient) continue;
    if (d.status == DecodeStatus::kInconsistent) {
      result.kind = QuorumResult::Kind::kContractFailure;
      result.version = m;
      result.detail = "inconsistent symbols for version " + std::to_string(m);
      return result;
    }
    result.kind = QuorumResult::Kind::kDecoded;
    result.version = m;
    result.payload = std::move(d.payload);
    return result;
  }
  result.kind = QuorumResult::Kind::kContractFailure;
  result.detail = "no version >= " + std::to_string(*latest) +
                  " has enough symbols in the read set";
  return result;
}

std::string to_hex(std::span<const gf::Element> payload) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(payload.size() * 4);
  for (gf::Element e : payload) {
    for (int shift = 12; shift >= 0; shift -= 4) {
      out.push_back(kDigits[(e >> shift) & 0xF]);
    }
  }
  return out;
}

std::vector<gf::Element> from_hex(std::string_view hex) {
  if (hex.size() % 4 != 0) {
    throw std::invalid_argument("hex payload length must be a multiple of 4");
  }
  auto nibble = [](char ch) -> unsigned {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
  };
  std::vector<gf::Element> out(hex.size() / 4);
  for (std::size_t i = 0; i < out.size(); ++i) {
    unsigned v = 0;
    for (int j = 0; j < 4; ++j) v = (v << 4) | nibble(hex[4 * i + j]);
    out[i] = static_cast<gf::Element>(v);
  }
  return out;
}

}  // namespace mvcode
