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

#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvcode/bounds.hpp"
#include "mvcode/codec.hpp"
#include "mvcode/fixtures.hpp"
#include "mvcode/oracle.hpp"
#include "mvcode/serialize.hpp"
#include "mvcode/verifier.hpp"

namespace py = pybind11;

namespace mvcode {
namespace {

using StateRows = std::vector<std::vector<int>>;

SystemState to_state(const StateRows& rows, const Params& p) {
  if (static_cast<int>(rows.size()) != p.servers) {
    throw std::invalid_argument("state length differs from n");
  }
  std::vector<VersionSet> servers;
  for (const auto& row : rows) {
    VersionSet v;
    for (int u : row) {
      if (u < 1 || u > p.versions) {
        throw std::invalid_argument("version id " + std::to_string(u) + " outside [1, nu]");
      }
      v.insert(u);
    }
    servers.push_back(v);
  }
  return SystemState(p.versions, std::move(servers));
}

StateRows from_state(const SystemState& s) {
  StateRows rows;
  for (const VersionSet& v : s.servers()) rows.push_back(v.ids());
  return rows;
}

py::tuple fraction(const Rational& r) {
  return py::make_tuple(r.numerator(), r.denominator());
}

MessageSet to_messages(const std::map<int, py::bytes>& in) {
  MessageSet out;
  for (const auto& [u, b] : in) {
    const std::string raw = b;
    out[u] = Bytes(raw.begin(), raw.end());
  }
  return out;
}

}  // namespace
}  // namespace mvcode

PYBIND11_MODULE(_mvcode, m) {
  using namespace mvcode;
  m.doc() = "Multi-version coding with ring side information";

  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<Params>(m, "Params")
      .def(py::init([](int n, int cw, int cr, int nu, int h, std::int64_t k) {
             Params p{n, cw, cr, nu, h, k};
             p.validate();
             return p;
           }),
           py::arg("n"), py::arg("cw"), py::arg("cr"), py::arg("nu"), py::arg("h"),
           py::arg("K"))
      .def_readonly("n", &Params::servers)
      .def_readonly("cw", &Params::write_quorum)
      .def_readonly("cr", &Params::read_quorum)
      .def_readonly("nu", &Params::versions)
      .def_readonly("h", &Params::radius)
      .def_readonly("K", &Params::message_bits)
      .def_property_readonly("c", &Params::overlap)
      .def_property_readonly("full_information", &Params::full_information)
      .def("__eq__", [](const Params& a, const Params& b) { return a == b; })
      .def("__repr__", [](const Params& p) { return params_to_json(p).dump(); });

  py::class_<ServerStore>(m, "ServerStore")
      .def_readonly("server", &ServerStore::server)
      .def_property_readonly("bits", &ServerStore::bits)
      .def_property_readonly("symbols", [](const ServerStore& s) {
        std::vector<std::tuple<int, std::uint32_t, std::string>> out;
        for (const auto& sym : s.symbols) {
          out.emplace_back(sym.version, sym.index, to_hex(sym.payload));
        }
        return out;
      });

  m.def("neighborhood", &neighborhood, py::arg("server"), py::arg("params"));
  m.def("complete_versions", [](const StateRows& s, const Params& p) {
    return complete_versions(to_state(s, p), p);
  }, py::arg("state"), py::arg("params"));
  m.def("latest_complete", [](const StateRows& s, const Params& p) {
    return latest_complete(to_state(s, p), p);
  }, py::arg("state"), py::arg("params"));
  m.def("local_candidate", [](const StateRows& s, int i, const Params& p) {
    return local_candidate(to_state(s, p), i, p);
  }, py::arg("state"), py::arg("server"), py::arg("params"));
  m.def("random_state", [](const Params& p, std::uint64_t seed) {
    return from_state(random_state(p, seed));
  }, py::arg("params"), py::arg("seed"));

  m.def("allocate", [](const std::string& scheme, const StateRows& s, int i,
                       const Params& p) {
    const Scheme sc = parse_scheme(scheme);
    check_regime(sc, p);
    const Allocation a = rule_for(sc)(to_state(s, p), i, p);
    std::map<int, int> symbols;
    for (VersionId u = 1; u <= a.versions(); ++u) {
      if (a.symbols(u) > 0) symbols[u] = a.symbols(u);
    }
    return py::make_tuple(symbols, a.denom());
  }, py::arg("scheme"), py::arg("state"), py::arg("server"), py::arg("params"),
     "Per-version symbol counts and the symbol granularity for one server.");

  m.def("encode", [](const std::string& scheme, const StateRows& s,
                     const std::map<int, py::bytes>& messages, const Params& p) {
    const Scheme sc = parse_scheme(scheme);
    check_regime(sc, p);
    return encode_all(sc, to_state(s, p), to_messages(messages), p);
  }, py::arg("scheme"), py::arg("state"), py::arg("messages"), py::arg("params"));

  m.def("decode", [](const std::string& scheme, const StateRows& s,
                     const std::vector<int>& read_set,
                     const std::vector<ServerStore>& stores,
                     const Params& p) -> py::object {
    const Scheme sc = parse_scheme(scheme);
    const QuorumResult q = quorum_decode(sc, to_state(s, p), read_set, stores, p);
    switch (q.kind) {
      case QuorumResult::Kind::kNull:
        return py::none();
      case QuorumResult::Kind::kContractFailure:
        throw std::runtime_error("decode failed: " + q.detail);
      case QuorumResult::Kind::kDecoded:
        break;
    }
    const std::string raw(q.payload.begin(), q.payload.end());
    return py::make_tuple(q.version, py::bytes(raw));
  }, py::arg("scheme"), py::arg("state"), py::arg("read_set"), py::arg("stores"),
     py::arg("params"), "Returns (version, payload), or None when no version is complete.");

  m.def("verify_json", [](const Params& p, const std::string& scheme,
                          const std::string& mode, std::uint64_t samples,
                          std::uint64_t seed, bool counting, bool bitexact, int jobs,
                          std::uint64_t budget) {
    VerifyOptions o;
    o.scheme = parse_scheme(scheme);
    if (mode == "exhaustive") {
      o.mode = VerifyMode::kExhaustive;
    } else if (mode == "sampled") {
      o.mode = VerifyMode::kSampled;
    } else {
      throw std::invalid_argument("unknown mode '" + mode + "'");
    }
    o.samples = samples;
    o.seed = seed;
    o.counting = counting;
    o.bitexact = bitexact;
    o.jobs = jobs;
    o.budget = budget;
    VerifyReport r;
    {
      py::gil_scoped_release release;
      r = verify(p, o);
    }
    return report_to_json(r).dump();
  }, py::arg("params"), py::arg("scheme"), py::arg("mode"), py::arg("samples"),
     py::arg("seed"), py::arg("counting"), py::arg("bitexact"), py::arg("jobs"),
     py::arg("budget"));

  m.def("compare_report_json", [](int first, int last, int nu, std::int64_t k) {
    return bounds_to_json(compare_report(first, last, nu, k)).dump();
  }, py::arg("c_first"), py::arg("c_last"), py::arg("nu"), py::arg("K"));

  m.def("fixture_json", [](const std::string& which, const Params& p) {
    FixturePair f;
    if (which == "thm3") {
      f = fixture_neighbor_blind(p);
    } else if (which == "thm4") {
      f = fixture_far_quorum(p);
    } else {
      throw std::invalid_argument("unknown fixture '" + which + "'");
    }
    Json j = fixture_to_json(f);
    j["indistinguishable_ok"] = check_indistinguishable(f, p).ok;
    j["requirements_ok"] = check_decode_requirements(f, p).ok;
    return j.dump();
  }, py::arg("which"), py::arg("params"));
  m.def("quorum_fixture_params", &quorum_fixture_params, py::arg("n"), py::arg("c"),
        py::arg("h") = -1, py::arg("K") = 1024);

  m.def("oracle_json", [](const Params& p, int g, std::uint64_t budget) {
    OracleResult r;
    {
      py::gil_scoped_release release;
      r = oracle_min_cost(p, g, budget);
    }
    return oracle_to_json(r, p).dump();
  }, py::arg("params"), py::arg("G"), py::arg("node_budget") = kOracleNodeBudget);

  m.def("cost_split", [](int c) { return fraction(cost_split(c).fraction); }, py::arg("c"));
  m.def("cost_latest_only", [](int nu, int c) {
    return fraction(cost_latest_only(nu, c).fraction);
  }, py::arg("nu"), py::arg("c"));
  m.def("cost_central", [](int c) { return fraction(cost_central(c).fraction); }, py::arg("c"));
  m.def("cost_baseline", [](int nu, int c) {
    return fraction(cost_baseline(nu, c).fraction);
  }, py::arg("nu"), py::arg("c"));
  m.def("lb_neighbor_blind", [](int c) { return fraction(lb_neighbor_blind(c).fraction); },
        py::arg("c"));
  m.def("lb_far_quorum", [](int c) { return fraction(lb_far_quorum(c).fraction); },
        py::arg("c"));
  m.def("lb_no_side_info_bits", &lb_no_side_info_bits, py::arg("K"), py::arg("nu"),
        py::arg("c"));
}
