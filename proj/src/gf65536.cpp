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

#include "mvcode/gf65536.hpp"

#include <stdexcept>

namespace mvcode::gf {

Tables::Tables() {
  std::uint32_t x = 1;
  for (std::uint32_t e = 0; e < kOrder - 1; ++e) {
    exp_[e] = static_cast<Element>(x);
    exp_[e + kOrder - 1] = static_cast<Element>(x);
    log_[x] = e;
    x <<= 1;
    if (x & kOrder) x ^= kPolynomial;
  }
  log_[0] = 0;  // unused; callers test for zero first
}

const Tables& Tables::get() {
  static const Tables* tables = new Tables();
  return *tables;
}

Element inv(Element a) {
  if (a == 0) throw std::domain_error("zero has no inverse in GF(2^16)");
  const Tables& t = Tables::get();
  return t.exp((kOrder - 1 - t.log(a)) % (kOrder - 1));
}

}  // namespace mvcode::gf
