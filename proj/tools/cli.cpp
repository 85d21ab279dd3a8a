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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "CLI11.hpp"

namespace mvcode::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot write " + cfg.out);
  f << text;
  if (!f) throw IoError("write to " + cfg.out + " failed");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
}

Bytes read_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(f), {});
}

void write_bytes(const std::string& path, const Bytes& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f.write(reinterpret_cast<const char*>(data.data()),
          static_cast<std::streamsize>(data.size()));
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int c = std::stoi(text);
      return {c, c};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad c range '" + text + "'");
  }
}

VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return VerifyMode::kExhaustive;
  if (mode == "sampled") return VerifyMode::kSampled;
  throw std::invalid_argument("unknown mode '" + mode + "'");
}

std::string format_bits(const Rational& r) {
  std::ostringstream os;
  os << rational_string(r);
  if (r.denominator() != 1) os << " (" << boost::rational_cast<double>(r) << ")";
  return os.str();
}

void add_params(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "number of servers");
  sub->add_option("--cw", cfg.cw, "write quorum size (default n-1)");
  sub->add_option("--cr", cfg.cr, "read quorum size (default n-1)");
  sub->add_option("--nu", cfg.nu, "number of versions");
  sub->add_option("--h", cfg.h, "side-information radius in hops");
  sub->add_option("--K", cfg.K, "message length in bits");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_flag("--print-config", "print the parsed configuration and exit");
}

}  // namespace

Params RunConfig::params() const {
  Params p;
  p.servers = n;
  p.write_quorum = cw.value_or(n - 1);
  p.read_quorum = cr.value_or(n - 1);
  p.versions = nu;
  p.radius = h.value_or(n / 2 - 1);
  p.message_bits = K;
  return p;
}

Json config_to_json(const RunConfig& cfg) {
  auto opt = [](const std::optional<int>& v) -> Json {
    return v ? Json(*v) : Json(nullptr);
  };
  return Json{{"subcommand", cfg.subcommand},
              {"n", cfg.n},
              {"cw", opt(cfg.cw)},
              {"cr", opt(cfg.cr)},
              {"nu", cfg.nu},
              {"h", opt(cfg.h)},
              {"K", cfg.K},
              {"scheme", cfg.scheme},
              {"mode", cfg.mode},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"layer", cfg.layer},
              {"out", cfg.out},
              {"format", cfg.format},
              {"budget", cfg.budget},
              {"jobs", cfg.jobs},
              {"alloc_csv", cfg.alloc_csv},
              {"c_range", cfg.c_range},
              {"which", cfg.which},
              {"c", cfg.c},
              {"G", cfg.granularity},
              {"node_budget", cfg.node_budget},
              {"payloads", cfg.payloads},
              {"state_file", cfg.state_file},
              {"read_set", cfg.read_set},
              {"store_out", cfg.store_out},
              {"store_in", cfg.store_in},
              {"decoded_out", cfg.decoded_out}};
}

RunConfig config_from_json(const Json& j) {
  auto opt = [&](const char* key) -> std::optional<int> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<int>();
  };
  RunConfig cfg;
  cfg.subcommand = j.value("subcommand", cfg.subcommand);
  cfg.n = j.value("n", cfg.n);
  cfg.cw = opt("cw");
  cfg.cr = opt("cr");
  cfg.nu = j.value("nu", cfg.nu);
  cfg.h = opt("h");
  cfg.K = j.value("K", cfg.K);
  cfg.scheme = j.value("scheme", cfg.scheme);
  cfg.mode = j.value("mode", cfg.mode);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.layer = j.value("layer", cfg.layer);
  cfg.out = j.value("out", cfg.out);
  cfg.format = j.value("format", cfg.format);
  cfg.budget = j.value("budget", cfg.budget);
  cfg.jobs = j.value("jobs", cfg.jobs);
  cfg.alloc_csv = j.value("alloc_csv", cfg.alloc_csv);
  cfg.c_range = j.value("c_range", cfg.c_range);
  cfg.which = j.value("which", cfg.which);
  cfg.c = j.value("c", cfg.c);
  cfg.granularity = j.value("G", cfg.granularity);
  cfg.node_budget = j.value("node_budget", cfg.node_budget);
  cfg.payloads = j.value("payloads", cfg.payloads);
  cfg.state_file = j.value("state_file", cfg.state_file);
  cfg.read_set = j.value("read_set", cfg.read_set);
  cfg.store_out = j.value("store_out", cfg.store_out);
  cfg.store_in = j.value("store_in", cfg.store_in);
  cfg.decoded_out = j.value("decoded_out", cfg.decoded_out);
  return cfg;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p = cfg.params();
  VerifyOptions options;
  options.scheme = parse_scheme(cfg.scheme);
  options.mode = parse_mode(cfg.mode);
  options.samples = cfg.samples;
  options.seed = cfg.seed;
  options.jobs = cfg.jobs;
  options.budget = cfg.budget;
  if (cfg.layer == "counting") {
    options.bitexact = false;
  } else if (cfg.layer == "bitexact") {
    options.counting = false;
  } else if (cfg.layer != "both") {
    throw std::invalid_argument("unknown layer '" + cfg.layer + "'");
  }

  const VerifyReport report = verify(p, options);
  emit(cfg, report_to_json(report).dump(2) + "\n", out);

  if (!cfg.alloc_csv.empty()) {
    std::vector<SystemState> states;
    states.reserve(report.states_checked);
    for (std::uint64_t k = 0; k < report.states_checked; ++k) {
      states.push_back(options.mode == VerifyMode::kExhaustive
                           ? SystemState::from_id(p, k)
                           : sampled_state(p, options.seed, k));
    }
    std::ofstream f(cfg.alloc_csv);
    if (!f) throw IoError("cannot write " + cfg.alloc_csv);
    write_allocation_csv(f, options.scheme, p, states);
  }

  err << "verify " << scheme_name(options.scheme) << " ("
      << mode_name(options.mode) << "): "
      << (report.passed() ? "pass" : "FAIL") << ", " << report.states_checked
      << " states x " << report.read_sets_per_state << " read sets, "
      << report.violation_count << " violations, worst case "
      << format_bits(report.worst_case_bits) << " bits (alpha "
      << format_bits(report.alpha_bits) << "), " << report.elapsed_seconds
      << " s\n";
  return report.passed() ? kExitPass : kExitViolation;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto [first, last] = parse_range(cfg.c_range);
  const auto rows = compare_report(first, last, cfg.nu, cfg.K);
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_bounds_csv(os, rows);
    emit(cfg, os.str(), out);
  } else if (cfg.format == "json") {
    emit(cfg, bounds_to_json(rows).dump(2) + "\n", out);
  } else {
    throw std::invalid_argument("unknown format '" + cfg.format + "'");
  }
  return kExitPass;
}

int cmd_fixtures(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  FixturePair pair;
  Params p;
  if (cfg.which == "thm3") {
    p = cfg.params();
    pair = fixture_neighbor_blind(p);
  } else if (cfg.which == "thm4") {
    p = quorum_fixture_params(cfg.n, cfg.c, cfg.h.value_or(-1), cfg.K);
    pair = fixture_far_quorum(p);
  } else {
    throw std::invalid_argument("unknown fixture '" + cfg.which + "'");
  }
  const FixtureCheck views = check_indistinguishable(pair, p);
  const FixtureCheck reqs = check_decode_requirements(pair, p);
  Json j = fixture_to_json(pair);
  j["indistinguishable_check"] = Json{
      {"ok", views.ok},
      {"problems", views.problems},
      {"distinguisher",
       views.distinguisher ? Json(*views.distinguisher) : Json(nullptr)}};
  j["requirements_check"] =
      Json{{"ok", reqs.ok}, {"problems", reqs.problems}};
  emit(cfg, j.dump(2) + "\n", out);
  const bool ok = views.ok && reqs.ok;
  err << "fixtures " << cfg.which << ": " << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kExitPass : kExitViolation;
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  StoreFile file;
  Params p = cfg.params();
  MessageSet messages;

  if (!cfg.payloads.empty()) {
    for (std::size_t k = 0; k < cfg.payloads.size(); ++k) {
      messages[static_cast<VersionId>(k + 1)] = read_bytes(cfg.payloads[k]);
    }
    const std::size_t size = messages.begin()->second.size();
    for (const auto& [u, m] : messages) {
      if (m.size() != size || size == 0) {
        throw std::invalid_argument("payload files must be non-empty and equal-sized");
      }
    }
    p.message_bits = static_cast<std::int64_t>(size) * 8;
  }

  if (!cfg.store_in.empty()) {
    file = stores_from_json(read_json_file(cfg.store_in));
    p = file.params;
    if (static_cast<int>(file.stores.size()) != p.servers) {
      throw IoError("store file holds " + std::to_string(file.stores.size()) +
                    " stores, expected " + std::to_string(p.servers));
    }
  } else {
    file.scheme = parse_scheme(cfg.scheme);
    file.params = p;
    check_regime(file.scheme, p);
    file.state = cfg.state_file.empty()
                     ? random_state(p, rng())
                     : state_from_json(read_json_file(cfg.state_file), p.versions);
    if (file.state.size() != p.servers) {
      throw std::invalid_argument("state length differs from n");
    }
  }
  check_regime(file.scheme, p);
  if (static_cast<int>(messages.size()) != p.versions && !messages.empty()) {
    throw std::invalid_argument("need one payload file per version");
  }
  if (messages.empty()) {
    std::mt19937_64 payload_rng(cfg.seed ^ 0x5EEDull);
    for (VersionId u = 1; u <= p.versions; ++u) {
      messages[u] = random_message(p.message_bits, payload_rng);
    }
  }
  for (const auto& [u, m] : messages) {
    if (m.size() != message_bytes(p.message_bits)) {
      throw std::invalid_argument("payload size does not match K");
    }
  }
  if (cfg.store_in.empty()) {
    file.stores = encode_all(file.scheme, file.state, messages, p);
  }
  if (!cfg.store_out.empty()) {
    std::ofstream f(cfg.store_out);
    if (!f) throw IoError("cannot write " + cfg.store_out);
    f << stores_to_json(file).dump(2) << "\n";
  }

  std::vector<ServerId> t(cfg.read_set.begin(), cfg.read_set.end());
  if (t.empty()) {
    const auto sets = read_sets(p.servers, p.read_quorum);
    t = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
  }
  std::sort(t.begin(), t.end());
  if (static_cast<int>(t.size()) != p.read_quorum ||
      std::adjacent_find(t.begin(), t.end()) != t.end() || t.front() < 0 ||
      t.back() >= p.servers) {
    throw std::invalid_argument("read set must name c_R distinct servers");
  }

  const QuorumResult q = quorum_decode(file.scheme, file.state, t, file.stores, p);
  Json j{{"scheme", scheme_name(file.scheme)},
         {"params", params_to_json(p)},
         {"state", state_to_json(file.state)},
         {"read_set", t}};
  int code = kExitPass;
  switch (q.kind) {
    case QuorumResult::Kind::kNull:
      j["result"] = "null";
      j["note"] = "no complete version; decoder returns NULL";
      break;
    case QuorumResult::Kind::kContractFailure:
      j["result"] = "failure";
      j["detail"] = q.detail;
      code = kExitViolation;
      break;
    case QuorumResult::Kind::kDecoded: {
      const bool match = q.payload == messages.at(q.version);
      j["result"] = "decoded";
      j["version"] = q.version;
      j["match"] = match;
      if (!cfg.decoded_out.empty()) write_bytes(cfg.decoded_out, q.payload);
      if (!match) code = kExitViolation;
      break;
    }
  }
  emit(cfg, j.dump(2) + "\n", out);
  err << "roundtrip: " << j["result"].get<std::string>()
      << (code == kExitPass ? "" : " (mismatch)") << "\n";
  return code;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p = cfg.params();
  const OracleResult r = oracle_min_cost(p, cfg.granularity, cfg.node_budget);
  Json j = oracle_to_json(r, p);
  const int c = p.overlap();
  Json bracket{{"central_bits",
                boost::rational_cast<double>(cost_central(c).bits(p.message_bits))},
               {"lb_eq1_bits", lb_no_side_info_bits(p.message_bits, p.versions, c)}};
  if (p.versions >= 2) {
    bracket["baseline_bits"] = boost::rational_cast<double>(
        cost_baseline(p.versions, c).bits(p.message_bits));
  }
  j["bracket"] = bracket;
  emit(cfg, j.dump(2) + "\n", out);
  err << "oracle: " << rational_string(r.fraction) << " K at G="
      << r.granularity << "\n";
  return kExitPass;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("MVCODE_BUDGET")) {
    try {
      cfg.budget = std::stoull(env);
    } catch (const std::logic_error&) {
      err << "error: MVCODE_BUDGET must be an integer\n";
      return kExitError;
    }
  }

  CLI::App app{"multi-version coding with ring side information"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "check a scheme over states");
  add_params(verify_cmd, cfg);
  verify_cmd->add_option("--scheme", cfg.scheme, "c1 | c2 | central");
  verify_cmd->add_option("--mode", cfg.mode, "exhaustive | sampled");
  verify_cmd->add_option("--samples", cfg.samples, "states in sampled mode");
  verify_cmd->add_option("--seed", cfg.seed, "seed for sampling and payloads");
  verify_cmd->add_option("--layer", cfg.layer, "counting | bitexact | both");
  verify_cmd->add_option("--budget", cfg.budget, "max states x read sets");
  verify_cmd->add_option("--jobs", cfg.jobs, "worker threads");
  verify_cmd->add_option("--alloc-csv", cfg.alloc_csv, "write allocation rows");

  auto* table_cmd = app.add_subcommand("table", "storage cost comparison");
  table_cmd->add_option("--nu", cfg.nu, "number of versions");
  table_cmd->add_option("--c", cfg.c_range, "c range first:last");
  table_cmd->add_option("--K", cfg.K, "message length in bits");
  table_cmd->add_option("--format", cfg.format, "csv | json");
  table_cmd->add_option("--out", cfg.out, "output file (default stdout)");
  table_cmd->add_flag("--print-config", "print the parsed configuration and exit");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "converse state pairs");
  add_params(fixtures_cmd, cfg);
  fixtures_cmd->add_option("--which", cfg.which, "thm3 | thm4");
  fixtures_cmd->add_option("--c", cfg.c, "quorum overlap for thm4");

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "encode and decode payloads");
  add_params(roundtrip_cmd, cfg);
  roundtrip_cmd->add_option("--scheme", cfg.scheme, "c1 | c2 | central");
  roundtrip_cmd->add_option("--seed", cfg.seed, "seed for state, payloads, read set");
  roundtrip_cmd->add_option("--payload", cfg.payloads, "payload file per version");
  roundtrip_cmd->add_option("--state", cfg.state_file, "state JSON file");
  roundtrip_cmd->add_option("--read-set", cfg.read_set, "servers to read")
      ->delimiter(',');
  roundtrip_cmd->add_option("--store-out", cfg.store_out, "write stores JSON");
  roundtrip_cmd->add_option("--store-in", cfg.store_in, "decode from stores JSON");
  roundtrip_cmd->add_option("--decoded-out", cfg.decoded_out, "write decoded bytes");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force minimum cost");
  add_params(oracle_cmd, cfg);
  oracle_cmd->add_option("--G", cfg.granularity, "allocation granularity");
  oracle_cmd->add_option("--node-budget", cfg.node_budget, "search node limit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (sub->get_option("--print-config")->count() > 0) {
    out << config_to_json(cfg).dump(2) << "\n";
    return kExitPass;
  }
  try {
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    if (cfg.subcommand == "table") return cmd_table(cfg, out, err);
    if (cfg.subcommand == "fixtures") return cmd_fixtures(cfg, out, err);
    if (cfg.subcommand == "roundtrip") return cmd_roundtrip(cfg, out, err);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace mvcode::cli
