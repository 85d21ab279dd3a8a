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

// Arithmetic in GF(2^16) with primitive polynomial
// x^16 + x^12 + x^3 + x + 1, via log/antilog tables.

#ifndef MVCODE_GF65536_HPP_
#define MVCODE_GF65536_HPP_

#include <array>
#include <cstdint>

namespace mvcode::gf {

using Element = std::uint16_t;

inline constexpr std::uint32_t kOrder = 1u << 16;
inline constexpr std::uint32_t kPolynomial = 0x1100B;

class Tables {
 public:
  static const Tables& get();

  Element exp(std::uint32_t e) const { return exp_[e]; }
  std::uint32_t log(Element a) const { return log_[a]; }

 private:
  Tables();

  // exp_ is doubled so log(a) + log(b) never needs a reduction.
  std::array<Element, 2 * (kOrder - 1)> exp_{};
  std::array<std::uint32_t, kOrder> log_{};
};

inline Element add(Element a, Element b) { return a ^ b; }

inline Element mul(Element a, Element b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = Tables::get();
  return t.exp(t.log(a) + t.log(b));
}

// Throws std::domain_error on zero.
Element inv(Element a);

inline Element div(Element a, Element b) { return mul(a, inv(b)); }

}  // namespace mvcode::gf

#endif  // MVCODE_GF65536_HPP_
