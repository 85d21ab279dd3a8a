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

#include "mvcode/allocation.hpp"

#include <numeric>

namespace mvcode {

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSplit: return "c1";
    case Scheme::kLatestOnly: return "c2";
    case Scheme::kCentral: return "central";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "c1") return Scheme::kSplit;
  if (name == "c2") return Scheme::kLatestOnly;
  if (name == "central") return Scheme::kCentral;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void check_regime(Scheme scheme, const Params& p) {
  p.validate();
  const int n = p.servers;
  const int c = p.overlap();
  if (scheme == Scheme::kCentral) {
    if (!p.full_information()) {
      throw RegimeError("central scheme needs full information (2h+1 >= n)");
    }
    return;
  }
  if (n % 2 != 0) throw RegimeError("n must be even");
  if (p.write_quorum != n - 1) throw RegimeError("c_W must equal n-1");
  if (2 * p.radius + 1 != n - 1) throw RegimeError("2h+1 must equal n-1");
  if (p.read_quorum > n - 1) throw RegimeError("c_R must be at most n-1");
  if (scheme == Scheme::kSplit && p.versions > 2) {
    throw RegimeError("c1 stores at most two versions");
  }
  if (scheme == Scheme::kLatestOnly && c < 2 * p.versions - 1) {
    throw RegimeError("c2 needs c >= 2*nu - 1");
  }
}

int granularity(Scheme scheme, const Params& p) {
  const int c = p.overlap();
  switch (scheme) {
    case Scheme::kSplit: return c * c;
    case Scheme::kLatestOnly: return c - 2 * (p.versions - 1);
    case Scheme::kCentral: return c;
  }
  return 1;
}

Rational alpha_fraction(Scheme scheme, const Params& p) {
  const std::int64_t c = p.overlap();
  switch (scheme) {
    case Scheme::kSplit:
      if (p.versions == 1) return Rational(1, c);
      return Rational(c + 2, c * c);
    case Scheme::kLatestOnly:
      return Rational(1, c - 2 * (p.versions - 1));
    case Scheme::kCentral:
      return Rational(1, c);
  }
  return Rational(0);
}

Allocation::Allocation(int versions, int denom)
    : denom_(denom), symbols_(versions, 0) {
  if (denom < 1) throw std::invalid_argument("granularity must be positive");
}

int Allocation::total_symbols() const {
  return std::accumulate(symbols_.begin(), symbols_.end(), 0);
}

Rational Allocation::bits(VersionId u, std::int64_t message_bits) const {
  return Rational(symbols(u)) * message_bits / denom_;
}

Rational Allocation::total_bits(std::int64_t message_bits) const {
  return Rational(total_symbols()) * message_bits / denom_;
}

Allocation alloc_split(const SideView& view, const Params& p) {
  check_regime(Scheme::kSplit, p);
  const int c = p.overlap();
  Allocation a(p.versions, c * c);
  const VersionSet& own = view.own();
  if (p.versions == 1) {
    if (own.contains(1)) a.set_symbols(1, c);
    return a;
  }
  const bool newer_near_complete =
      view.receivers_in_window(2) >= p.servers - 2;
  const int newer = (newer_near_complete && own.contains(2)) ? c : 0;
  a.set_symbols(2, newer);
  if (own.contains(1)) a.set_symbols(1, c + 2 - newer);
  return a;
}

Allocation alloc_latest_only(const SideView& view, const Params& p) {
  check_regime(Scheme::kLatestOnly, p);
  Allocation a(p.versions, granularity(Scheme::kLatestOnly, p));
  if (auto u = local_candidate(view, p)) a.set_symbols(*u, 1);
  return a;
}

Allocation alloc_central(const SystemState& s, ServerId i, const Params& p) {
  check_regime(Scheme::kCentral, p);
  Allocation a(p.versions, p.overlap());
  auto latest = latest_complete(s, p);
  if (latest && s[i].contains(*latest)) a.set_symbols(*latest, 1);
  return a;
}

AllocationRule rule_for(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSplit:
      return [](const SystemState& s, ServerId i, const Params& p) {
        return alloc_split(side_view(s, i, p), p);
      };
    case Scheme::kLatestOnly:
      return [](const SystemState& s, ServerId i, const Params& p) {
        return alloc_latest_only(side_view(s, i, p), p);
      };
    case Scheme::kCentral:
      return alloc_central;
  }
  throw std::invalid_argument("unknown scheme");
}

void write_allocation_csv(std::ostream& os, Scheme scheme, const Params& p,
                          const std::vector<SystemState>& states,
                          bool header) {
  const AllocationRule rule = rule_for(scheme);
  if (header) os << "state_id,server,version,symbols,bits\n";
  for (const SystemState& s : states) {
    for (ServerId i = 0; i < p.servers; ++i) {
      const Allocation a = rule(s, i, p);
      for (VersionId u : s[i].ids()) {
        const Rational bits = a.bits(u, p.message_bits);
        os << s.id() << ',' << i << ',' << u << ',' << a.symbols(u) << ',';
        if (bits.denominator() == 1) {
          os << bits.numerator();
        } else {
          os << bits.numerator() << '/' << bits.denominator();
        }
        os << '\n';
      }
    }
  }
}

}  // namespace mvcode
