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

#include "mvcode/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <thread>

namespace mvcode {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<Allocation> allocate_all(const AllocationRule& rule,
                                     const SystemState& s, const Params& p) {
  std::vector<Allocation> out;
  out.reserve(p.servers);
  for (ServerId i = 0; i < p.servers; ++i) out.push_back(rule(s, i, p));
  return out;
}

Violation make_violation(const SystemState& s, std::vector<ServerId> t,
                         std::string reason, std::string trace = {}) {
  return Violation{s.id(), to_string(s), std::move(t), std::move(reason),
                   std::move(trace)};
}

// First version m >= L_S, searching downward from nu, whose symbols over
// the read set reach the code dimension. Appends the search to trace.
std::optional<VersionId> counting_decodable(
    const std::vector<Allocation>& allocs, std::span<const ServerId> t,
    VersionId latest, const Params& p, std::string* trace) {
  for (VersionId m = p.versions; m >= latest; --m) {
    int count = 0;
    int denom = 1;
    for (ServerId i : t) {
      count += allocs[i].symbols(m);
      denom = allocs[i].denom();
    }
    if (trace) {
      *trace += "m=" + std::to_string(m) + ":" + std::to_string(count) + "/" +
                std::to_string(denom) + " ";
    }
    if (count >= denom) return m;
  }
  return std::nullopt;
}

std::optional<Violation> counting_with(const std::vector<Allocation>& allocs,
                                       const SystemState& s, const Params& p,
                                       const std::vector<std::vector<ServerId>>& sets) {
  const auto latest = latest_complete(s, p);
  if (!latest) return std::nullopt;
  for (const auto& t : sets) {
    if (!counting_decodable(allocs, t, *latest, p, nullptr)) {
      std::string trace;
      counting_decodable(allocs, t, *latest, p, &trace);
      if (!trace.empty()) trace.pop_back();
      return make_violation(s, t,
                            "no version >= " + std::to_string(*latest) +
                                " is decodable",
                            trace);
    }
  }
  return std::nullopt;
}

std::optional<Violation> bitexact_with(
    Scheme scheme, const std::vector<Allocation>& allocs, const SystemState& s,
    const Params& p, const std::vector<ServerStore>& stores,
    const MessageSet& messages,
    const std::vector<std::vector<ServerId>>& sets) {
  const MdsSpec spec = mds_spec(scheme, p);
  if (static_cast<int>(stores.size()) != p.servers) {
    return make_violation(s, {}, "store size mismatch",
                          std::to_string(stores.size()) + " stores for " +
                              std::to_string(p.servers) + " servers");
  }
  for (ServerId i = 0; i < p.servers; ++i) {
    if (stores[i].server != i) {
      return make_violation(s, {i}, "store size mismatch",
                            "store " + std::to_string(i) + " belongs to server " +
                                std::to_string(stores[i].server));
    }
    const std::int64_t expected =
        static_cast<std::int64_t>(allocs[i].total_symbols()) *
        spec.symbol_bits();
    if (stores[i].bits() != expected) {
      return make_violation(s, {i}, "store size mismatch",
                            "server " + std::to_string(i) + " stores " +
                                std::to_string(stores[i].bits()) +
                                " bits, allocation says " +
                                std::to_string(expected));
    }
  }
  const auto latest = latest_complete(s, p);
  for (const auto& t : sets) {
    const QuorumResult q = quorum_decode(scheme, s, t, stores, p);
    if (!latest) {
      if (q.kind != QuorumResult::Kind::kNull) {
        return make_violation(s, t, "expected NULL with no complete version");
      }
      continue;
    }
    if (q.kind == QuorumResult::Kind::kNull) {
      return make_violation(s, t, "unexpected NULL");
    }
    if (q.kind == QuorumResult::Kind::kContractFailure) {
      return make_violation(s, t, "decode contract failure", q.detail);
    }
    const auto expected = counting_decodable(allocs, t, *latest, p, nullptr);
    if (!expected || *expected != q.version) {
      return make_violation(
          s, t, "version mismatch vs counting",
          "decoded " + std::to_string(q.version) + ", counting says " +
              (expected ? std::to_string(*expected) : std::string("none")));
    }
    if (q.payload != messages.at(q.version)) {
      return make_violation(s, t, "payload mismatch",
                            "version " + std::to_string(q.version));
    }
  }
  return std::nullopt;
}

MessageSet random_messages(const Params& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MessageSet messages;
  for (VersionId u = 1; u <= p.versions; ++u) {
    messages.emplace(u, random_message(p.message_bits, rng));
  }
  return messages;
}

struct Partial {
  std::uint64_t states = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
  int worst_symbols = 0;
  std::int64_t worst_stored_bits = 0;
};

}  // namespace

std::string_view mode_name(VerifyMode mode) {
  return mode == VerifyMode::kExhaustive ? "exhaustive" : "sampled";
}

std::optional<Violation> check_state_counting(const AllocationRule& rule,
                                              const SystemState& s,
                                              const Params& p) {
  return counting_with(allocate_all(rule, s, p), s, p,
                       read_sets(p.servers, p.read_quorum));
}

std::optional<Violation> check_state_counting(Scheme scheme,
                                              const SystemState& s,
                                              const Params& p) {
  check_regime(scheme, p);
  return check_state_counting(rule_for(scheme), s, p);
}

std::optional<Violation> check_stores_bitexact(
    Scheme scheme, const SystemState& s, const Params& p,
    const std::vector<ServerStore>& stores, const MessageSet& messages) {
  check_regime(scheme, p);
  return bitexact_with(scheme, allocate_all(rule_for(scheme), s, p), s, p,
                       stores, messages, read_sets(p.servers, p.read_quorum));
}

std::optional<Violation> check_state_bitexact(Scheme scheme,
                                              const SystemState& s,
                                              const Params& p,
                                              std::uint64_t seed) {
  check_regime(scheme, p);
  const MessageSet messages = random_messages(p, seed);
  return check_stores_bitexact(scheme, s, p,
                               encode_all(scheme, s, messages, p), messages);
}

SystemState sampled_state(const Params& p, std::uint64_t seed,
                          std::uint64_t sample) {
  return random_state(p, splitmix64(seed ^ splitmix64(sample)));
}

VerifyReport verify(const Params& p, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_regime(options.scheme, p);
  if (options.rule && options.bitexact) {
    throw std::invalid_argument(
        "a custom allocation rule only applies to the counting layer");
  }
  const AllocationRule rule =
      options.rule ? options.rule : rule_for(options.scheme);
  const auto sets = read_sets(p.servers, p.read_quorum);

  VerifyReport report;
  report.scheme = options.scheme;
  report.params = p;
  report.mode = options.mode;
  report.seed = options.seed;
  report.counting = options.counting;
  report.bitexact = options.bitexact;
  report.read_sets_per_state = sets.size();
  report.denom = granularity(options.scheme, p);
  report.alpha_bits = alpha_fraction(options.scheme, p) * p.message_bits;

  std::uint64_t total = 0;
  if (options.mode == VerifyMode::kExhaustive) {
    total = state_count(p);
  } else {
    total = options.samples;
    report.samples = options.samples;
  }
  const std::uint64_t work = total * std::max<std::uint64_t>(1, sets.size());
  if (work / std::max<std::uint64_t>(1, sets.size()) != total ||
      work > options.budget) {
    throw BudgetError("verification needs " + std::to_string(total) +
                      " states x " + std::to_string(sets.size()) +
                      " read sets, over budget " +
                      std::to_string(options.budget));
  }

  auto check_one = [&](const SystemState& s, std::uint64_t label,
                       Partial& part) {
    const auto allocs = allocate_all(rule, s, p);
    for (const Allocation& a : allocs) {
      part.worst_symbols = std::max(part.worst_symbols, a.total_symbols());
    }
    std::optional<Violation> v;
    if (options.counting) v = counting_with(allocs, s, p, sets);
    if (!v && options.bitexact) {
      const std::uint64_t payload_seed =
          splitmix64(options.seed ^ 0xB17E7AC7ull) ^ splitmix64(label);
      const MessageSet messages = random_messages(p, payload_seed);
      const auto stores = encode_all(options.scheme, s, messages, p);
      for (const ServerStore& st : stores) {
        part.worst_stored_bits = std::max(part.worst_stored_bits, st.bits());
      }
      v = bitexact_with(options.scheme, allocs, s, p, stores, messages, sets);
    }
    ++part.states;
    if (v) {
      ++part.violation_count;
      if (part.violations.size() < options.max_violations) {
        part.violations.push_back(std::move(*v));
      }
    }
  };

  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Partial& part) {
    if (options.mode == VerifyMode::kExhaustive) {
      StateEnumerator(p, options.budget)
          .for_each(begin, end, [&](std::uint64_t id, const SystemState& s) {
            check_one(s, id, part);
          });
    } else {
      for (std::uint64_t k = begin; k < end; ++k) {
        check_one(sampled_state(p, options.seed, k), k, part);
      }
    }
  };

  const int jobs = static_cast<int>(std::clamp<std::uint64_t>(
      options.jobs < 1 ? 1 : options.jobs, 1, std::max<std::uint64_t>(1, total)));
  std::vector<Partial> parts(jobs);
  if (jobs == 1) {
    run_range(0, total, parts[0]);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      const std::uint64_t begin = total * w / jobs;
      const std::uint64_t end = total * (w + 1) / jobs;
      workers.emplace_back(
          [&, w, begin, end] { run_range(begin, end, parts[w]); });
    }
    for (auto& t : workers) t.join();
  }

  for (Partial& part : parts) {
    report.states_checked += part.states;
    report.violation_count += part.violation_count;
    for (Violation& v : part.violations) {
      if (report.violations.size() < options.max_violations) {
        report.violations.push_back(std::move(v));
      }
    }
    report.worst_case_symbols =
        std::max(report.worst_case_symbols, part.worst_symbols);
    report.worst_case_stored_bits =
        std::max(report.worst_case_stored_bits, part.worst_stored_bits);
  }
  report.worst_case_bits =
      Rational(report.worst_case_symbols) * p.message_bits / report.denom;
  report.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return report;
}

}  // namespace mvcode
