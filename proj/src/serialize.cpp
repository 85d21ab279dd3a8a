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

#include "mvcode/serialize.hpp"

#include <cstdio>

namespace mvcode {
namespace {

Json bound_json(const std::optional<Bound>& b, std::int64_t message_bits) {
  if (!b) return nullptr;
  return Json{{"fraction", rational_string(b->fraction)},
              {"bits", boost::rational_cast<double>(b->bits(message_bits))},
              {"in_regime", b->in_regime}};
}

std::string bits_cell(const std::optional<Bound>& b,
                      std::int64_t message_bits) {
  if (!b) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f",
                boost::rational_cast<double>(b->bits(message_bits)));
  return buf;
}

template <typename T>
T require(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  return j.at(key).get<T>();
}

}  // namespace

Json state_to_json(const SystemState& s) {
  Json out = Json::array();
  for (const VersionSet& v : s.servers()) out.push_back(v.ids());
  return out;
}

SystemState state_from_json(const Json& j, int versions) {
  if (!j.is_array()) throw std::invalid_argument("state must be a JSON array");
  std::vector<VersionSet> servers;
  for (const Json& entry : j) {
    if (!entry.is_array()) {
      throw std::invalid_argument("each server state must be an array");
    }
    VersionSet set;
    for (const Json& u : entry) {
      if (!u.is_number_integer()) {
        throw std::invalid_argument("version ids must be integers");
      }
      const int id = u.get<int>();
      if (id < 1 || id > versions) {
        throw std::invalid_argument("version id " + std::to_string(id) +
                                    " outside [1, nu]");
      }
      set.insert(id);
    }
    servers.push_back(set);
  }
  return SystemState(versions, std::move(servers));
}

Json params_to_json(const Params& p) {
  return Json{{"n", p.servers},       {"cw", p.write_quorum},
              {"cr", p.read_quorum},  {"nu", p.versions},
              {"h", p.radius},        {"K", p.message_bits},
              {"c", p.overlap()}};
}

Params params_from_json(const Json& j) {
  Params p;
  p.servers = require<int>(j, "n");
  p.write_quorum = require<int>(j, "cw");
  p.read_quorum = require<int>(j, "cr");
  p.versions = require<int>(j, "nu");
  p.radius = require<int>(j, "h");
  p.message_bits = require<std::int64_t>(j, "K");
  return p;
}

std::string rational_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json report_to_json(const VerifyReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back(Json{{"state_id", v.state_id},
                              {"state", v.state},
                              {"read_set", v.read_set},
                              {"reason", v.reason},
                              {"trace", v.trace}});
  }
  Json mode{{"kind", mode_name(r.mode)}};
  if (r.mode == VerifyMode::kSampled) {
    mode["count"] = r.samples;
    mode["seed"] = r.seed;
  }
  return Json{
      {"scheme", scheme_name(r.scheme)},
      {"params", params_to_json(r.params)},
      {"mode", mode},
      {"layers", Json{{"counting", r.counting}, {"bitexact", r.bitexact}}},
      {"seed", r.seed},
      {"states_checked", r.states_checked},
      {"read_sets_per_state", r.read_sets_per_state},
      {"pass", r.passed()},
      {"violation_count", r.violation_count},
      {"violations", violations},
      {"granularity", r.denom},
      {"worst_case_symbols", r.worst_case_symbols},
      {"worst_case_bits", rational_string(r.worst_case_bits)},
      {"alpha_bits", rational_string(r.alpha_bits)},
      {"worst_case_equals_alpha", r.worst_case_bits == r.alpha_bits},
      {"worst_case_stored_bits", r.worst_case_stored_bits},
  };
}

Json fixture_to_json(const FixturePair& f) {
  Json second_sets = Json::array();
  for (std::size_t k = 0; k < f.second_read_sets.size(); ++k) {
    Json entry{{"servers", f.second_read_sets[k]}};
    if (k < f.second_read_set_l.size()) entry["l"] = f.second_read_set_l[k];
    second_sets.push_back(entry);
  }
  return Json{{"name", f.name},
              {"params", params_to_json(f.params)},
              {"S1", state_to_json(f.first)},
              {"S2", state_to_json(f.second)},
              {"indistinguishable", f.indistinguishable},
              {"S1_allowed", f.first_allowed},
              {"S2_allowed", f.second_allowed},
              {"R1", f.first_read_set},
              {"R2", second_sets}};
}

Json oracle_to_json(const OracleResult& r, const Params& p) {
  return Json{{"params", params_to_json(p)},
              {"granularity", r.granularity},
              {"units", r.units},
              {"fraction", rational_string(r.fraction)},
              {"bits", boost::rational_cast<double>(r.fraction * p.message_bits)},
              {"infeasible_units", r.infeasible_units},
              {"strategy_variables", r.strategy_variables},
              {"nodes", r.nodes}};
}

Json stores_to_json(const StoreFile& f) {
  Json stores = Json::array();
  for (const ServerStore& st : f.stores) {
    Json symbols = Json::array();
    for (const CodedSymbol& sym : st.symbols) {
      symbols.push_back(Json::array({sym.version, sym.index,
                                     to_hex(sym.payload)}));
    }
    stores.push_back(Json{{"server", st.server}, {"symbols", symbols}});
  }
  return Json{{"scheme", scheme_name(f.scheme)},
              {"params", params_to_json(f.params)},
              {"state", state_to_json(f.state)},
              {"stores", stores}};
}

StoreFile stores_from_json(const Json& j) {
  StoreFile f;
  f.scheme = parse_scheme(require<std::string>(j, "scheme"));
  f.params = params_from_json(j.at("params"));
  f.state = state_from_json(j.at("state"), f.params.versions);
  if (f.state.size() != f.params.servers) {
    throw std::invalid_argument("state length differs from n");
  }
  for (const Json& st : j.at("stores")) {
    ServerStore store;
    store.server = require<int>(st, "server");
    for (const Json& sym : st.at("symbols")) {
      if (!sym.is_array() || sym.size() != 3) {
        throw std::invalid_argument("symbol must be [version, index, hex]");
      }
      CodedSymbol c;
      c.version = sym[0].get<int>();
      c.index = sym[1].get<std::uint32_t>();
      c.payload = from_hex(sym[2].get<std::string>());
      store.symbols.push_back(std::move(c));
    }
    f.stores.push_back(std::move(store));
  }
  return f;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
  os << "c,nu,cost_central,lb_thm3,cost_c1,cost_c2,cost_baseline,lb_eq1,"
        "lb_thm4,verdict\n";
  for (const BoundRow& r : rows) {
    char eq1[64];
    std::snprintf(eq1, sizeof eq1, "%.4f", r.lb_no_side_info_bits);
    os << r.c << ',' << r.versions << ','
       << bits_cell(r.central, r.message_bits) << ','
       << bits_cell(r.lb_neighbor_blind, r.message_bits) << ','
       << bits_cell(r.split, r.message_bits) << ','
       << bits_cell(r.latest_only, r.message_bits) << ','
       << bits_cell(r.baseline, r.message_bits) << ',' << eq1 << ','
       << bits_cell(r.lb_far_quorum, r.message_bits) << ','
       << verdict_name(r.verdict) << '\n';
  }
}

Json bounds_to_json(const std::vector<BoundRow>& rows) {
  Json out = Json::array();
  for (const BoundRow& r : rows) {
    const std::int64_t k = r.message_bits;
    out.push_back(Json{{"c", r.c},
                       {"nu", r.versions},
                       {"K", k},
                       {"cost_central", bound_json(r.central, k)},
                       {"lb_thm3", bound_json(r.lb_neighbor_blind, k)},
                       {"cost_c1", bound_json(r.split, k)},
                       {"cost_c2", bound_json(r.latest_only, k)},
                       {"cost_baseline", bound_json(r.baseline, k)},
                       {"lb_eq1", r.lb_no_side_info_bits},
                       {"lb_thm4", bound_json(r.lb_far_quorum, k)},
                       {"verdict", verdict_name(r.verdict)}});
  }
  return out;
}

}  // namespace mvcode
