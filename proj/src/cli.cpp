// Copyright 2026 The FogGate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "foggate/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <list>
#include <mutex>
#include <optional>
#include <thread>

#include "foggate/client.hpp"
#include "foggate/errors.hpp"
#include "foggate/harness.hpp"
#include "foggate/ledger.hpp"
#include "foggate/server.hpp"
#include "foggate/session.hpp"
#include "foggate/transport.hpp"

namespace foggate::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed ") + what + " " + path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("short write to " + path.string());
}

fs::path pub_path(const fs::path& key_path) {
  auto p = key_path;
  p += ".pub";
  return p;
}

std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop.store(true); }

// Flag values, seeded from the FOGGATE_CONFIG file and overridden by flags.
struct Options {
  std::string key;
  std::string ledger;
  std::string listen;
  std::string connect;
  std::string server;
  std::string scenario = "all";
  std::string target;
  std::string payload;
  std::string out;
  std::uint64_t seed = 42;
  unsigned bits = crypto::kDefaultKeyBits;
  unsigned attempts = 0;
  unsigned timeout_ms = 5000;
  unsigned max_connections = 0;
  bool force = false;
};

void apply_config(Options& o, const json& j) {
  auto str = [&](const char* k, std::string& dst) {
    if (j.contains(k)) dst = j.at(k).get<std::string>();
  };
  str("key", o.key);
  str("ledger", o.ledger);
  str("listen", o.listen);
  str("connect", o.connect);
  str("server", o.server);
  str("scenario", o.scenario);
  str("target", o.target);
  str("payload", o.payload);
  str("out", o.out);
  if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("bits")) o.bits = j.at("bits").get<unsigned>();
  if (j.contains("attempts")) o.attempts = j.at("attempts").get<unsigned>();
  if (j.contains("timeout_ms")) o.timeout_ms = j.at("timeout_ms").get<unsigned>();
  if (j.contains("max_connections")) o.max_connections = j.at("max_connections").get<unsigned>();
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string("missing required option ") + flag);
}

int cmd_keygen(const Options& o, std::ostream& out) {
  require(o.out, "--out");
  if (!o.force && (fs::exists(o.out) || fs::exists(pub_path(o.out))))
    throw ConfigError("refusing to overwrite " + o.out + " (use --force)");
  DeviceIdentity id{generate_serial_id(), crypto::generate_keypair(o.bits)};
  write_key_file(o.out, id);
  out << "wrote " << o.out << " and " << pub_path(o.out).string() << " serial_id=" << id.serial_id << '\n';
  return kExitOk;
}

int cmd_ledger(const std::string& action, const Options& o, std::ostream& out) {
  require(o.ledger, "--ledger");
  if (action == "init") {
    if (!o.force && fs::exists(o.ledger)) throw ConfigError("refusing to overwrite " + o.ledger + " (use --force)");
    ledger::Ledger::genesis().save(o.ledger);
    out << "initialized " << o.ledger << '\n';
    return kExitOk;
  }
  if (action == "add" || action == "block") {
    require(o.key, "--key");
    auto pub = read_public_file(o.key);
    auto led = ledger::Ledger::load(o.ledger);
    const auto status = action == "add" ? ledger::DeviceStatus::allowed : ledger::DeviceStatus::blocked;
    led.register_device(pub.serial_id, pub.key, status).save(o.ledger);
    out << pub.serial_id << ' ' << ledger::to_string(status) << '\n';
    return kExitOk;
  }
  if (action == "verify") {
    std::optional<ledger::Ledger> loaded;
    try {
      loaded = ledger::Ledger::load_unverified(o.ledger);
    } catch (const LoadError& e) {
      out << "invalid: " << e.what() << '\n';
      return kExitUnexpected;
    }
    const auto& led = *loaded;
    auto report = led.verify_chain();
    if (report.valid) {
      out << "valid blocks=" << led.size() << '\n';
      return kExitOk;
    }
    out << "invalid first_bad_index=" << report.first_bad_index.value_or(0) << '\n';
    return kExitUnexpected;
  }
  if (action == "show") {
    auto led = ledger::Ledger::load(o.ledger);
    for (std::size_t i = 0; i < led.size(); ++i) {
      const auto& b = led.block(i);
      out << "block " << b.index << " ts=" << b.timestamp << " hash=" << b.block_hash.hex() << '\n';
      for (const auto& e : b.entries) {
        out << "  " << ledger::to_string(e.kind) << " serial_digest=" << e.serial_id_digest.hex();
        if (e.status) out << " status=" << ledger::to_string(*e.status);
        if (e.tx_digest) out << " tx=" << e.tx_digest->hex();
        out << '\n';
      }
    }
    return kExitOk;
  }
  throw ConfigError("unknown ledger action " + action + " (init, add, block, verify, show)");
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  require(o.key, "--key");
  require(o.ledger, "--ledger");
  require(o.listen, "--listen");
  auto id = read_key_file(o.key);
  auto led = ledger::Ledger::load(o.ledger);  // refuses a chain that fails verification
  server::ServerNode node(std::move(id), std::move(led));
  std::mutex mu;
  auto listener = transport::TcpListener::listen(o.listen);
  const auto host = transport::parse_address(o.listen).host;
  out << "listening on " << host << ':' << listener.port() << std::endl;

  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  struct Conn {
    std::unique_ptr<transport::TcpTransport> link;
    std::thread worker;
    std::atomic<bool> done{false};
  };
  std::list<Conn> conns;
  unsigned accepted = 0, finished = 0;
  auto reap = [&] {
    for (auto it = conns.begin(); it != conns.end();) {
      if (it->done.load()) {
        it->worker.join();
        it = conns.erase(it);
        ++finished;
        std::lock_guard lock(mu);
        node.ledger().save(o.ledger);
      } else {
        ++it;
      }
    }
  };
  while (!g_stop.load()) {
    reap();
    if (o.max_connections && finished >= o.max_connections) break;
    if (o.max_connections && accepted >= o.max_connections) {
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
      continue;
    }
    auto link = listener.accept(std::chrono::milliseconds(200));
    if (!link) continue;
    ++accepted;
    auto& c = conns.emplace_back();
    c.link = std::move(link);
    c.worker = std::thread([&node, &mu, &c] {
      try {
        session::serve_connection(node, mu, *c.link, g_stop);
      } catch (const Error&) {
      }
      c.done.store(true);
    });
  }
  g_stop.store(true);
  for (auto& c : conns) {
    c.link->close();
    c.worker.join();
  }
  std::lock_guard lock(mu);
  node.ledger().save(o.ledger);
  out << "served " << accepted << " connection(s), " << node.audit_log().size() << " packet(s)" << std::endl;
  (void)err;
  return kExitOk;
}

int cmd_connect(const Options& o, std::ostream& out) {
  require(o.key, "--key");
  require(o.server, "--server");
  require(o.connect, "--connect");
  auto id = read_key_file(o.key);
  auto server_pub = read_public_file(o.server);
  std::optional<Bytes> payload;
  if (!o.payload.empty()) {
    try {
      payload = from_hex(o.payload);
    } catch (const Error&) {
      throw ConfigError("--payload must be hex");
    }
  }
  const auto timeout = std::chrono::milliseconds(o.timeout_ms);
  auto link = transport::TcpTransport::connect(o.connect, timeout);
  client::ClientConfig cc;
  cc.server_serial_id = server_pub.serial_id;
  client::ClientNode node(std::move(id), server_pub.key, cc);
  // The pre-provisioned client still consumes the server's hello first.
  auto hello = link->receive(timeout);
  if (hello) node.on_hello(*hello);
  auto outcome = session::run_client_handshake(node, *link, timeout);
  switch (outcome.phase) {
    case client::Phase::granted: out << "granted\n"; break;
    case client::Phase::denied: out << "denied: " << outcome.detail << '\n'; return kExitUnexpected;
    default: out << "denied (no response)\n"; return kExitUnexpected;
  }
  if (payload) {
    if (!session::send_data(node, *link, *payload, timeout)) {
      out << "data not acknowledged\n";
      return kExitUnexpected;
    }
    out << "data acknowledged\n";
  }
  link->close();
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  std::vector<harness::Scenario> scenarios;
  std::optional<harness::Target> only;
  if (!o.target.empty()) {
    only = harness::parse_target(o.target);
    if (!only) throw ConfigError("unknown target " + o.target + " (client, server)");
  }
  auto wanted = [&](harness::Target t) { return !only || *only == t; };
  if (o.scenario == "all") {
    for (auto& s : harness::default_scenarios(o.seed))
      if (wanted(s.target)) scenarios.push_back(s);
  } else {
    auto cat = harness::parse_category(o.scenario);
    if (!cat)
      throw ConfigError("unknown scenario " + o.scenario +
                        "; valid: all, spoofing, tampering, repudiation, info-disclosure, dos-client, dos-server, "
                        "privilege");
    for (auto& s : harness::default_scenarios(o.seed))
      if (wanted(s.target) && s.name == *cat) scenarios.push_back(s);
    if (scenarios.empty()) throw ConfigError("scenario " + o.scenario + " has no " + o.target + " variant");
  }

  harness::KeyPool pool(o.bits);
  std::vector<harness::ScenarioReport> reports;
  bool as_expected = true;
  for (auto s : scenarios) {
    s.config.key_bits = o.bits;
    s.config.attempts = o.attempts;
    auto r = harness::run_scenario(s, &pool);
    const auto expected = harness::expected_verdict(r.category, r.target);
    as_expected = as_expected && r.verdict == expected;
    out << harness::to_string(r.target) << ' ' << harness::to_string(r.category) << ": "
        << harness::to_string(r.verdict) << " (" << r.blocked << '/' << r.attempted << " blocked)"
        << (r.verdict == expected ? "" : " UNEXPECTED") << '\n';
    reports.push_back(std::move(r));
  }
  out << '\n' << harness::stride_matrix(reports).render();
  if (!o.out.empty()) write_text(o.out, harness::report_text(reports));
  return as_expected ? kExitOk : kExitUnexpected;
}

}  // namespace

void write_key_file(const fs::path& path, const DeviceIdentity& id) {
  json j;
  j["serial_id"] = id.serial_id;
  j["private_key_pem"] = id.private_key().to_pem();
  j["public_key_der_hex"] = to_hex(id.public_key().der());
  write_text(path, j.dump(2) + "\n");
  json p;
  p["serial_id"] = id.serial_id;
  p["public_key_der_hex"] = to_hex(id.public_key().der());
  write_text(pub_path(path), p.dump(2) + "\n");
}

DeviceIdentity read_key_file(const fs::path& path) {
  auto j = read_json(path, "key file");
  try {
    auto priv = crypto::PrivateKey::from_pem(j.at("private_key_pem").get<std::string>());
    auto pub = priv.public_key();
    return DeviceIdentity{j.at("serial_id").get<std::string>(), crypto::KeyPair{pub, priv}};
  } catch (const json::exception& e) {
    throw ConfigError("key file " + path.string() + " lacks a field: " + e.what());
  } catch (const Error& e) {
    throw ConfigError("key file " + path.string() + ": " + e.what());
  }
}

PublicIdentity read_public_file(const fs::path& path) {
  auto j = read_json(path, "public key file");
  try {
    return PublicIdentity{j.at("serial_id").get<std::string>(),
                          crypto::PublicKey::from_der(from_hex(j.at("public_key_der_hex").get<std::string>()))};
  } catch (const json::exception& e) {
    throw ConfigError("public key file " + path.string() + " lacks a field: " + e.what());
  } catch (const Error& e) {
    throw ConfigError("public key file " + path.string() + ": " + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* cfg = std::getenv("FOGGATE_CONFIG"); cfg && *cfg) {
    try {
      apply_config(o, read_json(cfg, "config file"));
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const json::exception& e) {
      err << "error: config file " << cfg << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }

  CLI::App app{"Permissioned-ledger access control for fog devices"};
  app.require_subcommand(1);
  auto* keygen = app.add_subcommand("keygen", "Generate a device or server key file");
  keygen->add_option("--out", o.out, "Key file to write; a .pub file is written next to it");
  keygen->add_option("--bits", o.bits, "RSA modulus size (2048 or 3072)");
  keygen->add_flag("--force", o.force, "Overwrite existing files");

  std::string action;
  auto* led = app.add_subcommand("ledger", "Administer the device ledger");
  led->add_option("action", action, "init | add | block | verify | show")->required();
  led->add_option("--ledger", o.ledger, "Ledger file");
  led->add_option("--key", o.key, "Key or .pub file of the device to add or block");
  led->add_flag("--force", o.force, "Overwrite an existing ledger on init");

  auto* serve = app.add_subcommand("serve", "Run the access server over TCP");
  serve->add_option("--key", o.key, "Server key file");
  serve->add_option("--ledger", o.ledger, "Ledger file; updated as packets are processed");
  serve->add_option("--listen", o.listen, "HOST:PORT (port 0 picks one)");
  serve->add_option("--max-connections", o.max_connections, "Exit after this many connections (0 = run until signalled)");

  auto* connect = app.add_subcommand("connect", "Run the client handshake against a server");
  connect->add_option("--key", o.key, "Client key file");
  connect->add_option("--server", o.server, "Server .pub or key file");
  connect->add_option("--connect", o.connect, "HOST:PORT");
  connect->add_option("--payload", o.payload, "Hex DATA payload to send after a grant");
  connect->add_option("--timeout-ms", o.timeout_ms, "Handshake timeout");

  std::string positional;
  auto* simulate = app.add_subcommand("simulate", "Run threat-model scenarios on the simulated network");
  simulate->add_option("name", positional, "Scenario name or 'all'");
  simulate->add_option("--scenario", o.scenario, "Scenario name or 'all'");
  simulate->add_option("--target", o.target, "Restrict to client or server");
  simulate->add_option("--seed", o.seed, "Scenario seed");
  simulate->add_option("--attempts", o.attempts, "Attempts per scenario (0 = scenario default)");
  simulate->add_option("--bits", o.bits, "RSA modulus size for scenario keys");
  simulate->add_option("--out", o.out, "Report file (JSON lines)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!positional.empty()) o.scenario = positional;

  try {
    if (keygen->parsed()) return cmd_keygen(o, out);
    if (led->parsed()) return cmd_ledger(action, o, out);
    if (serve->parsed()) return cmd_serve(o, out, err);
    if (connect->parsed()) return cmd_connect(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NetworkError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexpected;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }
  return kExitUsage;
}

}  // namespace foggate::cli
