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

// Bit-exact realization of allocations: every version is coded separately
// with a systematic Reed-Solomon code over GF(2^16). Symbol index j is the
// field element j, so indices 0..k-1 carry the message verbatim and any k
// distinct indices reconstruct it.

#ifndef MVCODE_CODEC_HPP_
#define MVCODE_CODEC_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mvcode/allocation.hpp"
#include "mvcode/gf65536.hpp"
#include "mvcode/model.hpp"

namespace mvcode {

using Bytes = std::vector<std::uint8_t>;

// Version id -> K-bit payload of ceil(K/8) bytes.
using MessageSet = std::map<VersionId, Bytes>;

inline constexpr std::uint32_t kIndexUniverse = gf::kOrder;

struct MdsSpec {
  int dimension = 1;                 // k
  int symbol_elements = 1;           // field elements per coded symbol
  std::int64_t message_bits = 0;     // unpadded K

  // Pads K up to a multiple of 16 * k.
  static MdsSpec for_message(int dimension, std::int64_t message_bits);

  std::int64_t symbol_bits() const { return 16ll * symbol_elements; }
  std::int64_t padded_bits() const { return symbol_bits() * dimension; }
};

struct CodedSymbol {
  VersionId version = 0;
  std::uint32_t index = 0;
  std::vector<gf::Element> payload;

  std::int64_t bits() const {
    return 16ll * static_cast<std::int64_t>(payload.size());
  }
  bool operator==(const CodedSymbol&) const = default;
};

// Symbols at the given indices. Throws std::invalid_argument on duplicate
// indices, an index outside the field, or a message of the wrong length.
std::vector<CodedSymbol> mds_encode(std::span<const std::uint8_t> message,
                                    const MdsSpec& spec,
                                    std::span<const std::uint32_t> indices,
                                    VersionId version = 1);

enum class DecodeStatus { kOk, kInsufficient, kInconsistent };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::kInsufficient;
  Bytes payload;

  bool ok() const { return status == DecodeStatus::kOk; }
};

// Reconstructs from the k lowest distinct indices. Repeated indices must
// carry identical payloads.
DecodeResult mds_decode(std::span<const CodedSymbol> symbols,
                        const MdsSpec& spec);

std::size_t message_bytes(std::int64_t message_bits);
Bytes random_message(std::int64_t message_bits, std::mt19937_64& rng);

struct ServerStore {
  ServerId server = 0;
  std::vector<CodedSymbol> symbols;

  std::int64_t bits() const;
  bool operator==(const ServerStore&) const = default;
};

// Code parameters for one version under a scheme.
MdsSpec mds_spec(Scheme scheme, const Params& p);

// Indices reserved per server for version u; server i owns
// [i * slots, (i + 1) * slots).
int slots_per_server(Scheme scheme, const Params& p, VersionId u);

// Encodes the messages this server received. `received` must hold exactly
// the versions in S(i). The result depends on S only through
// side_view(S, i) for the side-view schemes.
ServerStore server_encode(Scheme scheme, const SystemState& s, ServerId i,
                          const MessageSet& received, const Params& p);

// Encodes all n servers from the full message set.
std::vector<ServerStore> encode_all(Scheme scheme, const SystemState& s,
                                    const MessageSet& messages,
                                    const Params& p);

// MessageSet restricted to S(i).
MessageSet received_messages(const MessageSet& messages, const VersionSet& v);

struct QuorumResult {
  enum class Kind { kDecoded, kNull, kContractFailure };

  Kind kind = Kind::kNull;
  VersionId version = 0;
  Bytes payload;
  std::string detail;
};

// Tries versions nu, nu-1, ..., L_S and returns the first with enough
// distinct symbols across the read set; NULL when no version is complete.
QuorumResult quorum_decode(Scheme scheme, const SystemState& s,
                           std::span<const ServerId> read_set,
                           std::span<const ServerStore> stores,
                           const Params& p);

std::string to_hex(std::span<const gf::Element> payload);
std::vector<gf::Element> from_hex(std::string_view hex);

}  // namespace mvcode

#endif  // MVCODE_CODEC_HPP_
