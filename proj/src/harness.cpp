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

#include "foggate/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <cstdio>

#include "foggate/client.hpp"
#include "foggate/errors.hpp"
#include "foggate/identity.hpp"
#include "foggate/ledger.hpp"
#include "foggate/packet.hpp"
#include "foggate/server.hpp"
#include "foggate/simnet.hpp"

namespace foggate::harness {

using packet::MessageType;
using simnet::Direction;

const char* to_string(Category c) {
  switch (c) {
    case Category::spoofing: return "spoofing";
    case Category::tampering: return "tampering";
    case Category::repudiation: return "repudiation";
    case Category::info_disclosure: return "info_disclosure";
    case Category::dos_client: return "dos_client";
    case Category::dos_server: return "dos_server";
    case Category::privilege: return "privilege";
  }
  return "?";
}

const char* to_string(Target t) { return t == Target::client ? "client" : "server"; }

const char* to_string(CellVerdict v) {
  switch (v) {
    case CellVerdict::defended: return "defended";
    case CellVerdict::vulnerable: return "vulnerable";
    case CellVerdict::untested: return "untested";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view name) {
  for (auto c : {Category::spoofing, Category::tampering, Category::repudiation, Category::info_disclosure,
                 Category::dos_client, Category::dos_server, Category::privilege})
    if (name == to_string(c)) return c;
  if (name == "info-disclosure") return Category::info_disclosure;
  if (name == "dos-client") return Category::dos_client;
  if (name == "dos-server") return Category::dos_server;
  return std::nullopt;
}

std::optional<Target> parse_target(std::string_view name) {
  if (name == "client") return Target::client;
  if (name == "server") return Target::server;
  return std::nullopt;
}

const crypto::KeyPair& KeyPool::get(const std::string& role) {
  auto it = keys_.find(role);
  if (it == keys_.end()) it = keys_.emplace(role, crypto::generate_keypair(bits_)).first;
  return it->second;
}

std::string ScenarioReport::to_record() const {
  nlohmann::ordered_json j;
  j["type"] = "scenario";
  j["category"] = to_string(category);
  j["target"] = to_string(target);
  j["seed"] = seed;
  j["attempted"] = attempted;
  j["blocked"] = blocked;
  j["verdict"] = to_string(verdict);
  j["expected"] = to_string(expected_verdict(category, target));
  j["evidence"] = evidence;
  return j.dump();
}

namespace {

constexpr std::uint64_t kEpoch = 1'700'000'000;
const std::string kServer = "server";
const std::string kMallory = "mallory";

std::string client_addr(std::size_t i) { return "client-" + std::to_string(i); }

struct Processed {
  std::string from;
  Bytes wire;
  server::HandleResult result;
};

// Server, registered clients and a seeded network. The server clock follows
// the virtual network clock. Not movable: the clock captures `this`.
class World {
public:
  World(const ScenarioConfig& cfg, KeyPool& keys, std::uint64_t salt, std::size_t clients,
        std::optional<Bytes> banner = std::nullopt)
      : cfg(cfg),
        keys(keys),
        rng(cfg.seed * 0x9E3779B97F4A7C15ull + salt),
        net(rng(), cfg.tick),
        server_identity{serial("srv"), keys.get("server")} {
    auto led = ledger::Ledger::genesis(kEpoch);
    for (std::size_t i = 0; i < clients; ++i) {
      devices.push_back(DeviceIdentity{serial("dev"), keys.get("client-" + std::to_string(i))});
      led = std::move(led).append_block(
          {ledger::LedgerEntry::identity(crypto::one_way_hash(devices.back().serial_id),
                                         devices.back().public_key().der(), ledger::DeviceStatus::allowed,
                                         kEpoch)},
          kEpoch);
    }
    server::ServerConfig sc;
    sc.clock = [this] { return kEpoch + static_cast<std::uint64_t>(net.now().count() / 1000); };
    if (banner) sc.grant_banner = *banner;
    server = std::make_unique<server::ServerNode>(server_identity, std::move(led), std::move(sc));
    net.add_endpoint(kServer);
    for (std::size_t i = 0; i < clients; ++i) {
      net.add_endpoint(client_addr(i));
      links.push_back(net.connect(client_addr(i), kServer));
    }
  }
  World(const World&) = delete;
  World& operator=(const World&) = delete;

  std::string serial(const std::string& prefix) {
    ByteWriter w;
    w.u64(rng());
    return prefix + "-" + to_hex(std::move(w).take());
  }

  Bytes random_payload(std::size_t n) {
    Bytes b(n);
    for (auto& c : b) c = static_cast<std::uint8_t>(rng());
    return b;
  }

  Millis now() const { return net.now(); }

  client::ClientNode make_client(std::size_t i, bool provisioned) {
    client::ClientConfig cc;
    if (provisioned) cc.server_serial_id = server_identity.serial_id;
    cc.response_timeout = cfg.client_timeout;
    return client::ClientNode(devices.at(i), server_identity.public_key(), cc);
  }

  simnet::LinkId add_mallory_link(const std::string& peer) {
    if (!net.has_endpoint(kMallory)) net.add_endpoint(kMallory);
    return net.connect(kMallory, peer);
  }

  std::vector<Processed> pump_server(std::size_t capacity = SIZE_MAX) {
    std::vector<Processed> out;
    while (out.size() < capacity) {
      auto f = net.receive(kServer);
      if (!f) break;
      auto result = server->handle_packet(f->bytes);
      if (result.response) net.send(kServer, f->from, *result.response);
      out.push_back(Processed{f->from, std::move(f->bytes), std::move(result)});
    }
    return out;
  }

  std::vector<Bytes> drain(const std::string& addr, std::size_t capacity = SIZE_MAX) {
    std::vector<Bytes> out;
    while (out.size() < capacity) {
      auto f = net.receive(addr);
      if (!f) break;
      out.push_back(std::move(f->bytes));
    }
    return out;
  }

  // Sends one packet from a client, lets the server answer and hands every
  // frame that comes back to the client. Returns the server's view.
  std::vector<Processed> exchange(client::ClientNode& c, std::size_t i, Bytes wire, bool data) {
    net.send(client_addr(i), kServer, std::move(wire));
    net.step();
    auto processed = pump_server();
    net.step();
    for (auto& frame : drain(client_addr(i))) {
      if (data)
        c.on_data_ack(frame);
      else
        c.on_response(frame);
    }
    return processed;
  }

  bool handshake(client::ClientNode& c, std::size_t i) {
    exchange(c, i, c.request_access(now()), false);
    return c.phase() == client::Phase::granted;
  }

  // Raw packet from a device link; the reply, if any, is discarded.
  Processed inject_from(std::size_t i, Bytes wire) {
    net.send(client_addr(i), kServer, std::move(wire));
    net.step();
    auto processed = pump_server();
    net.step();
    drain(client_addr(i));
    if (processed.size() != 1) throw Error("expected exactly one processed packet");
    return std::move(processed.front());
  }

  const ScenarioConfig& cfg;
  KeyPool& keys;
  std::mt19937_64 rng;
  simnet::Network net;
  DeviceIdentity server_identity;
  std::vector<DeviceIdentity> devices;
  std::vector<simnet::LinkId> links;
  std::unique_ptr<server::ServerNode> server;
};

simnet::AdversaryHook hook(simnet::HookMode mode, Direction d) {
  simnet::AdversaryHook h;
  h.mode = std::move(mode);
  h.direction = d;
  return h;
}

std::vector<simnet::Frame> captures(const World& w, const std::vector<std::pair<simnet::LinkId, std::size_t>>& at) {
  std::vector<simnet::Frame> out;
  for (auto [link, idx] : at) {
    const auto& log = w.net.hook(link, idx).capture_log;
    out.insert(out.end(), log.begin(), log.end());
  }
  return out;
}

std::string reason_counts(const std::map<std::string, std::size_t>& m) {
  std::string s;
  for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + k + ":" + std::to_string(v);
  return s.empty() ? "none" : s;
}

// Splits n attempts over weighted classes, every class getting at least one
// when n allows it.
std::vector<std::size_t> split(std::size_t n, const std::vector<std::size_t>& weights) {
  std::size_t total = 0;
  for (auto w : weights) total += w;
  std::vector<std::size_t> out(weights.size(), 0);
  std::size_t given = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out[i] = n * weights[i] / total;
    if (out[i] == 0 && given < n) out[i] = 1;
    given += out[i];
  }
  for (std::size_t i = 0; given < n; i = (i + 1) % out.size(), ++given) ++out[i];
  while (given > n) {
    auto it = std::max_element(out.begin(), out.end());
    --*it;
    --given;
  }
  return out;
}

// Wire regions of a packet, as a list of (name, offset) probes.
std::vector<std::pair<std::string, std::size_t>> wire_probes(ByteView sample) {
  const auto frame = packet::decode_wire(sample);
  const std::size_t wk = frame.envelope.wrapped_key.size();
  const std::size_t nonce_at = 3 + wk;
  const std::size_t len_at = nonce_at + crypto::kNonceSize;
  const std::size_t ct_at = len_at + 4;
  const std::size_t ct_len = frame.envelope.ciphertext.size();
  return {
      {"version", 0},
      {"wrapped-key-length", 1},
      {"wrapped-key-length", 2},
      {"wrapped-key", 3},
      {"wrapped-key", 3 + wk / 2},
      {"wrapped-key", 2 + wk},
      {"envelope-nonce", nonce_at},
      {"envelope-nonce", nonce_at + crypto::kNonceSize - 1},
      {"envelope-length", len_at},
      {"envelope-length", len_at + 3},
      {"envelope-serial", ct_at + 1},
      {"envelope-serial", ct_at + 4},
      {"envelope-signature", ct_at + 40},
      {"envelope-inner", ct_at + ct_len - crypto::kTagSize - 8},
      {"envelope-tag", ct_at + ct_len - 1},
  };
}

std::vector<std::size_t> offsets(const std::vector<std::pair<std::string, std::size_t>>& probes) {
  std::vector<std::size_t> out;
  for (const auto& p : probes) out.push_back(p.second);
  return out;
}

Bytes forged(MessageType type, const std::string& claimed, Bytes payload,
             const crypto::PrivateKey& signer, const crypto::PublicKey& recipient) {
  auto msg = packet::InnerMessage::make(type, claimed, std::move(payload));
  return packet::create_packet(msg, signer, recipient);
}

std::size_t identity_entries(const ledger::Ledger& l) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (const auto& e : l.block(i).entries)
      if (e.kind == ledger::EntryKind::identity) ++n;
  return n;
}

void finish(ScenarioReport& r) {
  r.verdict = r.attempted > 0 && r.blocked == r.attempted ? CellVerdict::defended : CellVerdict::vulnerable;
}

// ---------------------------------------------------------------- spoofing

void spoofing_server(World& w, ScenarioReport& r) {
  const std::size_t n = w.cfg.attempts ? w.cfg.attempts : 99;
  auto& victim = w.devices.at(0);
  w.net.attach(w.links[0], hook(simnet::Eavesdrop{}, Direction::a_to_b));

  auto honest = w.make_client(0, true);
  const bool granted = w.handshake(honest, 0);
  for (int k = 0; k < 2 && granted; ++k)
    w.exchange(honest, 0, honest.send_data(as_bytes("telemetry " + std::to_string(k))), true);
  r.evidence.push_back(std::string("honest client-0 handshake: ") + client::to_string(honest.phase()));
  std::vector<Bytes> captured;
  for (auto& f : captures(w, {{w.links[0], 0}})) captured.push_back(f.bytes);

  w.add_mallory_link(kServer);
  std::vector<const crypto::KeyPair*> adversary;
  for (int k = 0; k < 4; ++k) adversary.push_back(&w.keys.get("adversary-" + std::to_string(k)));

  const char* names[] = {"forged-serial", "stolen-serial", "replayed-capture"};
  std::map<std::string, std::size_t> reasons[3];
  std::size_t attempts[3] = {0, 0, 0}, grants[3] = {0, 0, 0};
  std::vector<int> in_flight;
  auto settle = [&] {
    w.net.step();
    std::size_t k = 0;
    for (auto& p : w.pump_server()) {
      if (p.from != kMallory) continue;
      const int cls = in_flight.at(k++);
      ++attempts[cls];
      if (p.result.event.verdict == server::Verdict::granted)
        ++grants[cls];
      else
        ++r.blocked;
      ++reasons[cls][server::to_string(p.result.event.reason)];
    }
    in_flight.clear();
    w.net.step();
    w.drain(kMallory);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const int cls = captured.empty() ? static_cast<int>(i % 2) : static_cast<int>(i % 3);
    const auto& key = *adversary[i % adversary.size()];
    Bytes wire;
    if (cls == 0)
      wire = forged(MessageType::access_request, w.serial("dev"), {}, key.private_key,
                    w.server_identity.public_key());
    else if (cls == 1)
      wire = forged(MessageType::access_request, victim.serial_id, {}, key.private_key,
                    w.server_identity.public_key());
    else
      wire = captured[i % captured.size()];
    w.net.send(kMallory, kServer, std::move(wire));
    in_flight.push_back(cls);
    if (in_flight.size() == 64) settle();
  }
  if (!in_flight.empty()) settle();

  r.attempted = n;
  for (int c = 0; c < 3; ++c)
    if (attempts[c])
      r.evidence.push_back(std::string(names[c]) + ": attempts=" + std::to_string(attempts[c]) +
                           " grants=" + std::to_string(grants[c]) + " reasons=" + reason_counts(reasons[c]));
}

void spoofing_client(World& w, ScenarioReport& r) {
  const std::size_t n = w.cfg.attempts ? w.cfg.attempts : 30;
  auto counts = split(n, {8, 8, 4, 6, 4});
  for (std::size_t i = 0; i < 2; ++i) w.net.attach(w.links[i], hook(simnet::Eavesdrop{}, Direction::b_to_a));

  // Earlier sessions give the adversary real server responses to replay.
  auto first = w.make_client(0, true);
  w.handshake(first, 0);
  auto other = w.make_client(1, true);
  w.handshake(other, 1);
  const auto old_grants = captures(w, {{w.links[0], 0}});
  const auto foreign_grants = captures(w, {{w.links[1], 0}});
  if (old_grants.empty() || foreign_grants.empty()) throw Error("setup handshakes produced no responses");

  w.add_mallory_link(client_addr(0));
  const auto& imposter = w.keys.get("adversary-0");
  const std::string imposter_serial = w.serial("srv");
  auto victim = w.make_client(0, false);
  const auto& victim_pk = w.devices[0].public_key();

  auto deliver = [&](Bytes wire) {
    w.net.send(kMallory, client_addr(0), std::move(wire));
    w.net.step();
    return w.drain(client_addr(0));
  };

  std::size_t blocked = 0;
  for (std::size_t k = 0; k < counts[0]; ++k) {
    const auto& claimed = k % 2 ? imposter_serial : w.server_identity.serial_id;
    for (auto& f : deliver(packet::create_hello(claimed, imposter.private_key))) victim.on_hello(f);
    if (victim.phase() == client::Phase::idle) ++blocked;
  }
  r.evidence.push_back("forged-hello: attempts=" + std::to_string(counts[0]) +
                       " rejected=" + std::to_string(blocked));
  r.blocked += blocked;

  w.net.send(kServer, client_addr(0), w.server->make_hello());
  w.net.step();
  for (auto& f : w.drain(client_addr(0))) victim.on_hello(f);
  r.evidence.push_back(std::string("genuine hello: ") + client::to_string(victim.phase()));
  if (victim.phase() != client::Phase::discovered) throw Error("client did not accept the genuine hello");
  w.net.send(client_addr(0), kServer, victim.request_access(w.now()));

  auto try_response = [&](const char* name, std::size_t count, const std::function<Bytes(std::size_t)>& make) {
    std::size_t ok = 0;
    for (std::size_t k = 0; k < count; ++k) {
      for (auto& f : deliver(make(k))) victim.on_response(f);
      if (victim.phase() == client::Phase::requested) ++ok;
    }
    r.evidence.push_back(std::string(name) + ": attempts=" + std::to_string(count) +
                         " rejected=" + std::to_string(ok));
    r.blocked += ok;
  };
  const Bytes banner = to_bytes("access granted");
  auto grant_payload = [&] {
    Bytes p = w.random_payload(packet::kNonceTokenSize);
    p.insert(p.end(), banner.begin(), banner.end());
    return p;
  };
  try_response("forged-grant", counts[1], [&](std::size_t k) {
    const auto& claimed = k % 2 ? imposter_serial : w.server_identity.serial_id;
    return forged(MessageType::access_grant, claimed, grant_payload(), imposter.private_key, victim_pk);
  });
  try_response("forged-deny", counts[2], [&](std::size_t) {
    return forged(MessageType::access_deny, w.server_identity.serial_id, w.random_payload(20),
                  imposter.private_key, victim_pk);
  });
  try_response("replayed-grant", counts[3],
               [&](std::size_t k) { return old_grants[k % old_grants.size()].bytes; });
  try_response("foreign-grant", counts[4],
               [&](std::size_t k) { return foreign_grants[k % foreign_grants.size()].bytes; });

  w.pump_server();
  w.net.step();
  for (auto& f : w.drain(client_addr(0))) victim.on_response(f);
  r.evidence.push_back(std::string("control: genuine response after forgeries -> ") +
                       client::to_string(victim.phase()));
  r.attempted = n;
}

// --------------------------------------------------------------- tampering

void tampering_server(World& w, ScenarioReport& r) {
  auto& d0 = w.devices[0];
  const auto& server_pk = w.server_identity.public_key();
  const auto req_probes = wire_probes(
      packet::create_packet(packet::InnerMessage::make(MessageType::access_request, d0.serial_id), d0.private_key(),
                            server_pk));
  const auto data_probes = wire_probes(packet::create_packet(
      packet::InnerMessage::make(MessageType::data, w.devices[1].serial_id, to_bytes("reading=0000")),
      w.devices[1].private_key(), server_pk));

  simnet::TamperRule req_rule;
  req_rule.cycle_positions = offsets(req_probes);
  w.net.attach(w.links[0], hook(simnet::Tamper{req_rule}, Direction::a_to_b));
  simnet::TamperRule data_rule;
  data_rule.cycle_positions = offsets(data_probes);
  data_rule.skip_frames = 1;
  w.net.attach(w.links[1], hook(simnet::Tamper{data_rule}, Direction::a_to_b));

  auto record = [&](const std::string& what, const std::pair<std::string, std::size_t>& probe,
                    const std::vector<Processed>& processed) {
    ++r.attempted;
    const bool denied = processed.size() == 1 && processed[0].result.event.verdict == server::Verdict::denied;
    if (denied) ++r.blocked;
    r.evidence.push_back(what + " region=" + probe.first + " offset=" + std::to_string(probe.second) + " -> " +
                         (processed.size() == 1 ? std::string(server::to_string(processed[0].result.event.reason))
                                                : std::string("lost")));
  };

  for (const auto& probe : req_probes) {
    auto c = w.make_client(0, true);
    auto processed = w.exchange(c, 0, c.request_access(w.now()), false);
    record("request", probe, processed);
  }

  auto c1 = w.make_client(1, true);
  if (!w.handshake(c1, 1)) throw Error("untampered request from client-1 was not granted");
  for (std::size_t k = 0; k < data_probes.size(); ++k) {
    char reading[16];
    std::snprintf(reading, sizeof reading, "reading=%04zu", k);
    auto processed = w.exchange(c1, 1, c1.send_data(as_bytes(std::string_view(reading))), true);
    record("data", data_probes[k], processed);
  }

  const Bytes image = w.server->ledger().serialize();
  const std::size_t mutations = 12;
  for (std::size_t m = 0; m < mutations; ++m) {
    const std::size_t span = image.size() / mutations;
    const std::size_t at = m * span + w.rng() % span;
    Bytes bad = image;
    bad[at] ^= static_cast<std::uint8_t>(1u << (m % 8));
    std::string outcome = "undetected";
    try {
      auto loaded = ledger::Ledger::deserialize(bad);
      if (!(loaded == w.server->ledger())) outcome = "undetected-change";
    } catch (const IntegrityError&) {
      outcome = "integrity-error";
    } catch (const LoadError&) {
      outcome = "load-error";
    }
    ++r.attempted;
    if (outcome == "integrity-error" || outcome == "load-error") ++r.blocked;
    r.evidence.push_back("ledger-image offset=" + std::to_string(at) + " -> " + outcome);
  }
  r.evidence.push_back(std::string("live ledger verify_chain: ") +
                       (w.server->ledger().verify_chain().valid ? "valid" : "invalid"));
  r.evidence.push_back(std::string("client-0 access level: ") +
                       (w.server->access_level(d0.serial_id) == server::AccessLevel::granted ? "granted" : "none"));
}

void tampering_client(World& w, ScenarioReport& r) {
  auto& d0 = w.devices[0];
  Bytes grant_payload(packet::kNonceTokenSize);
  const Bytes banner = to_bytes("access granted");
  grant_payload.insert(grant_payload.end(), banner.begin(), banner.end());
  const auto probes = wire_probes(packet::create_packet(
      packet::InnerMessage::make(MessageType::access_grant, w.server_identity.serial_id, grant_payload),
      w.server_identity.private_key(), d0.public_key()));

  simnet::TamperRule rule;
  rule.cycle_positions = offsets(probes);
  rule.skip_frames = 1;
  w.net.attach(w.links[0], hook(simnet::Tamper{rule}, Direction::b_to_a));

  auto session = w.make_client(0, true);
  if (!w.handshake(session, 0)) throw Error("untampered grant was not accepted");

  for (const auto& probe : probes) {
    w.exchange(session, 0, session.send_data(as_bytes("reading")), true);
    const bool discarded = !session.notes().empty() && session.notes().back().kind == client::NoteKind::ack_discarded;
    ++r.attempted;
    if (discarded) ++r.blocked;
    r.evidence.push_back("ack region=" + probe.first + " offset=" + std::to_string(probe.second) + " -> " +
                         (discarded ? "discarded" : "accepted"));
  }
  for (const auto& probe : probes) {
    auto c = w.make_client(0, true);
    w.exchange(c, 0, c.request_access(w.now()), false);
    const bool held = c.phase() == client::Phase::requested;
    ++r.attempted;
    if (held) ++r.blocked;
    r.evidence.push_back("grant region=" + probe.first + " offset=" + std::to_string(probe.second) + " -> " +
                         (held ? "discarded" : client::to_string(c.phase())));
  }
}

// ------------------------------------------------------------- repudiation

void repudiation_server(World& w, ScenarioReport& r) {
  const std::size_t n = w.cfg.attempts ? w.cfg.attempts : 50;
  const auto mallory = w.add_mallory_link(kServer);
  std::vector<std::pair<simnet::LinkId, std::size_t>> taps;
  for (std::size_t i = 0; i < 2; ++i) {
    w.net.attach(w.links[i], hook(simnet::Eavesdrop{}, Direction::a_to_b));
    taps.emplace_back(w.links[i], 0);
  }
  w.net.attach(mallory, hook(simnet::Eavesdrop{}, Direction::a_to_b));
  taps.emplace_back(mallory, 0);

  const auto& adversary = w.keys.get("adversary-0");
  const auto& server_pk = w.server_identity.public_key();
  std::vector<std::optional<client::ClientNode>> sessions(2);
  std::vector<Bytes> honest_frames;
  std::map<std::string, std::map<std::string, std::size_t>> mix;
  std::size_t processed = 0;

  for (std::size_t k = 0; k < n; ++k) {
    int kind = static_cast<int>(w.rng() % 6);
    const std::size_t who = w.rng() % 2;
    if (kind == 1 && !(sessions[who] && sessions[who]->phase() == client::Phase::granted)) kind = 0;
    if (kind == 4 && honest_frames.empty()) kind = 5;
    std::string name;
    std::vector<Processed> out;
    if (kind == 0 || kind == 1) {
      if (kind == 0) sessions[who].emplace(w.make_client(who, true));
      auto& c = *sessions[who];
      Bytes wire = kind == 0 ? c.request_access(w.now()) : c.send_data(as_bytes("reading " + std::to_string(k)));
      honest_frames.push_back(wire);
      out = w.exchange(c, who, std::move(wire), kind == 1);
      name = kind == 0 ? "honest-request" : "honest-data";
    } else {
      Bytes wire;
      if (kind == 2) {
        wire = forged(MessageType::access_request, w.serial("dev"), {}, adversary.private_key, server_pk);
        name = "unregistered";
      } else if (kind == 3) {
        wire = forged(MessageType::access_request, w.devices[who].serial_id, {}, adversary.private_key, server_pk);
        name = "stolen-serial";
      } else if (kind == 4) {
        wire = honest_frames[w.rng() % honest_frames.size()];
        name = "replay";
      } else {
        wire = w.random_payload(1 + w.rng() % 400);
        name = "junk";
      }
      w.net.send(kMallory, kServer, std::move(wire));
      w.net.step();
      out = w.pump_server();
      w.net.step();
      w.drain(kMallory);
    }
    processed += out.size();
    for (const auto& p : out) {
      const auto& e = p.result.event;
      ++mix[name][e.verdict == server::Verdict::granted ? "granted" : server::to_string(e.reason)];
    }
  }

  const auto frames = captures(w, taps);
  const auto& audit = w.server->audit_log();
  std::set<crypto::Digest> recorded;
  std::size_t records = 0;
  const auto& led = w.server->ledger();
  for (std::size_t i = 0; i < led.size(); ++i)
    for (const auto& e : led.block(i).entries)
      if (e.kind == ledger::EntryKind::transaction_record && e.tx_digest) {
        recorded.insert(*e.tx_digest);
        ++records;
      }

  std::size_t matched = 0;
  for (const auto& e : audit) {
    const bool found = std::any_of(frames.begin(), frames.end(), [&](const simnet::Frame& f) {
      return server::transaction_digest(f.bytes, e.verdict) == e.tx_digest;
    });
    if (found && recorded.contains(e.tx_digest)) ++matched;
  }
  r.attempted = audit.size();
  r.blocked = matched;
  if (processed != n || audit.size() != n || records != n) r.blocked = 0;

  r.evidence.push_back("packets=" + std::to_string(n) + " processed=" + std::to_string(processed) +
                       " audit-events=" + std::to_string(audit.size()) +
                       " ledger-records=" + std::to_string(records));
  r.evidence.push_back("events matched to captured frames and ledger records: " + std::to_string(matched) + "/" +
                       std::to_string(audit.size()));
  for (const auto& [name, counts] : mix)
    r.evidence.push_back("kind=" + name + " outcomes=" + reason_counts(counts));
  r.evidence.push_back(std::string("ledger verify_chain: ") + (led.verify_chain().valid ? "valid" : "invalid"));
}

void repudiation_client(World& w, ScenarioReport& r) {
  std::vector<std::pair<simnet::LinkId, std::size_t>> taps;
  for (std::size_t i = 0; i < 2; ++i) {
    w.net.attach(w.links[i], hook(simnet::Eavesdrop{}, Direction::b_to_a));
    taps.emplace_back(w.links[i], 0);
  }
  w.add_mallory_link(client_addr(0));
  const auto& imposter = w.keys.get("adversary-0");

  std::vector<std::pair<std::size_t, client::ClientNode>> sessions;
  for (std::size_t i = 0; i < 2; ++i) {
    auto c = w.make_client(i, true);
    if (w.handshake(c, i))
      for (int k = 0; k < 5; ++k) w.exchange(c, i, c.send_data(as_bytes("reading " + std::to_string(k))), true);
    sessions.emplace_back(i, std::move(c));
  }

  // A session that also sees forged responses before the genuine one.
  auto late = w.make_client(0, true);
  w.net.send(client_addr(0), kServer, late.request_access(w.now()));
  const std::size_t forgeries = 3;
  for (std::size_t k = 0; k < forgeries; ++k) {
    Bytes payload = w.random_payload(packet::kNonceTokenSize + 8);
    w.net.send(kMallory, client_addr(0),
               forged(MessageType::access_grant, w.server_identity.serial_id, std::move(payload),
                      imposter.private_key, w.devices[0].public_key()));
    w.net.step();
    for (auto& f : w.drain(client_addr(0))) late.on_response(f);
  }
  w.pump_server();
  w.net.step();
  for (auto& f : w.drain(client_addr(0))) late.on_response(f);
  sessions.emplace_back(0, std::move(late));

  const auto frames = captures(w, taps);
  std::size_t accepted = 0, provable = 0, discarded = 0;
  for (const auto& [i, c] : sessions) {
    for (const auto& note : c.notes()) {
      if (note.kind == client::NoteKind::response_discarded || note.kind == client::NoteKind::ack_discarded) {
        ++discarded;
        continue;
      }
      if (note.kind != client::NoteKind::response_accepted && note.kind != client::NoteKind::ack_accepted) continue;
      ++accepted;
      for (const auto& f : frames) {
        if (crypto::one_way_hash(f.bytes) != note.frame_digest) continue;
        try {
          auto sealed = packet::open_packet(f.bytes, w.devices[i].private_key());
          auto inner = packet::decrypt_inner(sealed, sealed.sender_serial_id);
          if (sealed.sender_serial_id == w.server_identity.serial_id &&
              packet::verify_packet_signature(sealed, inner, w.server_identity.public_key())) {
            ++provable;
            break;
          }
        } catch (const Error&) {
        }
      }
    }
  }
  r.attempted = accepted;
  r.blocked = provable;
  r.evidence.push_back("responses accepted by clients=" + std::to_string(accepted) +
                       " provably signed by the server=" + std::to_string(provable));
  r.evidence.push_back("forged responses injected=" + std::to_string(forgeries) +
                       " discarded by clients=" + std::to_string(discarded));
}

// --------------------------------------------------------- info disclosure

// What an eavesdropper holding every public key and serial can recover from
// one captured frame.
std::size_t analyze(const World& w, ByteView frame, const std::vector<Bytes>& secrets, std::size_t& decryptions) {
  std::size_t recovered = 0;
  auto scan = [&](ByteView data) {
    for (const auto& s : secrets)
      if (std::search(data.begin(), data.end(), s.begin(), s.end()) != data.end()) recovered += s.size();
  };
  scan(frame);

  std::vector<crypto::SymmetricKey> guesses;
  std::vector<std::string> serials{w.server_identity.serial_id};
  std::vector<const crypto::PublicKey*> pks{&w.server_identity.public_key()};
  for (const auto& d : w.devices) {
    serials.push_back(d.serial_id);
    pks.push_back(&d.public_key());
  }
  for (const auto& s : serials) guesses.push_back(crypto::derive_inner_key(s));
  for (const auto* pk : pks) {
    crypto::SymmetricKey k;
    k.bytes = crypto::one_way_hash(pk->der()).bytes;
    guesses.push_back(k);
  }
  try {
    const auto wf = packet::decode_wire(frame);
    if (wf.envelope.wrapped_key.size() >= crypto::kSymmetricKeySize) {
      crypto::SymmetricKey k;
      std::copy_n(wf.envelope.wrapped_key.begin(), crypto::kSymmetricKeySize, k.bytes.begin());
      guesses.push_back(k);
    }
    for (const auto& k : guesses) {
      try {
        auto plain = crypto::symmetric_decrypt(k, wf.envelope.nonce, wf.envelope.ciphertext);
        ++decryptions;
        recovered += plain.size();
      } catch (const DecryptionFailure&) {
      }
    }
  } catch (const Error&) {
  }
  return recovered;
}

void info_scenario(World& w, ScenarioReport& r, Direction dir, const std::vector<Bytes>& secrets,
                   const std::function<Bytes(std::size_t, int)>& payload) {
  std::vector<std::pair<simnet::LinkId, std::size_t>> taps;
  for (std::size_t i = 0; i < 2; ++i) {
    w.net.attach(w.links[i], hook(simnet::Eavesdrop{}, dir));
    taps.emplace_back(w.links[i], 0);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    auto c = w.make_client(i, true);
    if (!w.handshake(c, i)) throw Error("handshake failed in disclosure scenario");
    for (int k = 0; k < 4; ++k) w.exchange(c, i, c.send_data(payload(i, k)), true);
  }
  const auto frames = captures(w, taps);
  std::size_t total = 0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    std::size_t decryptions = 0;
    const auto got = analyze(w, frames[k].bytes, secrets, decryptions);
    total += got;
    ++r.attempted;
    if (got == 0) ++r.blocked;
    r.evidence.push_back("frame " + std::to_string(k) + " " + frames[k].from + "->" + frames[k].to + " len=" +
                         std::to_string(frames[k].bytes.size()) + " recovered=" + std::to_string(got) +
                         " decryptions=" + std::to_string(decryptions));
  }
  r.evidence.push_back("known secrets=" + std::to_string(secrets.size()) +
                       " plaintext bytes recovered=" + std::to_string(total));
}

void info_server(World& w, ScenarioReport& r) {
  std::vector<Bytes> secrets;
  for (std::size_t i = 0; i < 8; ++i) secrets.push_back(to_bytes("secret-reading-" + to_hex(w.random_payload(6))));
  info_scenario(w, r, Direction::a_to_b, secrets,
                [&](std::size_t i, int k) { return secrets[i * 4 + static_cast<std::size_t>(k)]; });
}

void info_client(World& w, ScenarioReport& r, const Bytes& banner) {
  info_scenario(w, r, Direction::b_to_a, {banner}, [](std::size_t, int k) {
    return to_bytes("reading " + std::to_string(k));
  });
}

// --------------------------------------------------------------------- DoS

struct FlowResult {
  std::optional<std::uint64_t> granted_at;
  std::size_t timeouts = 0;
  std::size_t peak_backlog = 0;
  std::size_t server_processed = 0;
};

// Full three-step flow for client-0 starting from the server hello, with
// per-step processing limits. `each_step` runs before every network step.
FlowResult run_flow(World& w, std::uint64_t limit, const std::function<void()>& each_step = {}) {
  FlowResult out;
  auto c = w.make_client(0, false);
  w.net.send(kServer, client_addr(0), w.server->make_hello());
  for (std::uint64_t s = 1; s <= limit; ++s) {
    if (each_step) each_step();
    w.net.step();
    out.server_processed += w.pump_server(w.cfg.server_capacity).size();
    out.peak_backlog = std::max(out.peak_backlog, w.net.inbox_size(client_addr(0)));
    for (auto& f : w.drain(client_addr(0), w.cfg.client_capacity)) {
      if (c.phase() == client::Phase::idle)
        c.on_hello(f);
      else if (c.phase() == client::Phase::requested)
        c.on_response(f);
    }
    if (c.phase() == client::Phase::granted) {
      out.granted_at = s;
      return out;
    }
    const auto before = c.phase();
    c.tick(w.now());
    if (before == client::Phase::requested && c.phase() == client::Phase::discovered) ++out.timeouts;
    if (c.phase() == client::Phase::discovered) w.net.send(client_addr(0), kServer, c.request_access(w.now()));
  }
  return out;
}

std::uint64_t budget_for(const ScenarioConfig& cfg, KeyPool& keys, std::uint64_t salt, std::uint64_t& baseline) {
  World clean(cfg, keys, salt, 1);
  auto base = run_flow(clean, 50);
  if (!base.granted_at) throw Error("baseline handshake did not complete");
  baseline = *base.granted_at;
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(baseline) * cfg.budget_factor));
}

void dos_report(ScenarioReport& r, const FlowResult& f, std::uint64_t baseline, std::uint64_t budget,
                const std::string& attack) {
  r.attempted = 1;
  r.blocked = f.granted_at && *f.granted_at <= budget ? 1 : 0;
  r.evidence.push_back(attack);
  r.evidence.push_back("baseline-steps=" + std::to_string(baseline) + " budget-steps=" + std::to_string(budget));
  r.evidence.push_back("honest client granted-at=" + (f.granted_at ? std::to_string(*f.granted_at) : "never") +
                       " timeouts=" + std::to_string(f.timeouts) +
                       " peak-client-backlog=" + std::to_string(f.peak_backlog) +
                       " server-processed=" + std::to_string(f.server_processed));
}

void dos_client(World& w, ScenarioReport& r, KeyPool& keys, std::uint64_t salt) {
  std::uint64_t baseline = 0;
  const auto budget = budget_for(w.cfg, keys, salt, baseline);
  simnet::Flood flood;
  flood.rate = w.cfg.flood_rate;
  flood.duration_steps = w.cfg.flood_steps;
  w.net.attach(w.links[0], hook(flood, Direction::b_to_a));
  auto f = run_flow(w, w.cfg.flood_steps + 4 * budget);
  dos_report(r, f, baseline, budget,
             "junk flood server->client rate=" + std::to_string(flood.rate) + "/step for " +
                 std::to_string(flood.duration_steps) + " steps; client capacity=" +
                 std::to_string(w.cfg.client_capacity) + "/step");
}

void dos_server(World& w, ScenarioReport& r, KeyPool& keys, std::uint64_t salt) {
  std::uint64_t baseline = 0;
  const auto budget = budget_for(w.cfg, keys, salt, baseline);
  const auto link = w.add_mallory_link(kServer);
  simnet::Flood flood;
  flood.rate = w.cfg.flood_rate;
  flood.duration_steps = w.cfg.flood_steps;
  w.net.attach(link, hook(flood, Direction::a_to_b));
  const auto& adversary = w.keys.get("adversary-0");
  std::vector<Bytes> requests;
  for (int k = 0; k < 16; ++k)
    requests.push_back(forged(MessageType::access_request, w.serial("dev"), {}, adversary.private_key,
                              w.server_identity.public_key()));
  unsigned steps = 0;
  auto f = run_flow(w, w.cfg.flood_steps + 4 * budget, [&] {
    if (steps++ >= w.cfg.flood_steps) return;
    for (const auto& q : requests) w.net.send(kMallory, kServer, q);
  });
  dos_report(r, f, baseline, budget,
             "junk flood attacker->server rate=" + std::to_string(flood.rate) + "/step plus " +
                 std::to_string(requests.size()) + " unregistered requests/step for " +
                 std::to_string(flood.duration_steps) + " steps; server capacity=" +
                 std::to_string(w.cfg.server_capacity) + "/step");
}

// --------------------------------------------------------------- privilege

void privilege_server(World& w, ScenarioReport& r) {
  const std::size_t n = w.cfg.attempts ? w.cfg.attempts : 10;
  const char* resources[] = {"admin/config", "admin/users", "admin/firmware", "admin/ledger", "admin/keys"};
  std::vector<client::ClientNode> clients;
  for (std::size_t i = 0; i < 2; ++i) {
    clients.push_back(w.make_client(i, true));
    if (!w.handshake(clients.back(), i)) throw Error("handshake failed in privilege scenario");
  }
  r.evidence.push_back("client-0 and client-1 granted; neither is provisioned with an admin role");
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k % 2;
    auto& c = clients[i];
    const std::string req = std::string("GET ") + resources[k % 5];
    auto out = w.exchange(c, i, c.send_data(as_bytes(req)), true);
    const bool granted = out.size() == 1 && out[0].result.event.verdict == server::Verdict::granted;
    ++r.attempted;
    if (!granted) ++r.blocked;
    r.evidence.push_back(client_addr(i) + " DATA '" + req + "' -> " +
                         (granted ? std::string("granted")
                                  : std::string(out.empty() ? "lost" : server::to_string(out[0].result.event.reason))));
  }
  r.evidence.push_back("access is all-or-nothing: a granted device reaches every resource");
}

void privilege_client(World& w, ScenarioReport& r) {
  const std::size_t rounds = w.cfg.attempts ? std::max<std::size_t>(1, w.cfg.attempts / 7) : 2;
  const auto& server_pk = w.server_identity.public_key();
  auto c0 = w.make_client(0, true);
  auto c1 = w.make_client(1, true);
  if (!w.handshake(c0, 0) || !w.handshake(c1, 1)) throw Error("handshake failed in privilege scenario");
  w.server->revoke(w.devices[1].serial_id);
  const std::size_t identities = identity_entries(w.server->ledger());

  auto levels = [&] {
    std::string s;
    for (std::size_t i = 0; i < w.devices.size(); ++i)
      s += w.server->access_level(w.devices[i].serial_id) == server::AccessLevel::granted ? 'G' : '-';
    return s;
  };
  const std::string expected_levels = levels();
  r.evidence.push_back("access levels before attempts: " + expected_levels);

  auto packet_from = [&](std::size_t i, MessageType t, std::string payload) {
    auto msg = packet::InnerMessage::make(t, w.devices[i].serial_id, to_bytes(payload));
    return packet::create_packet(msg, w.devices[i].private_key(), server_pk);
  };
  struct Attempt {
    std::string name;
    std::size_t device;
    MessageType type;
    std::string payload;
    bool must_deny;
  };
  const std::vector<Attempt> attempts{
      {"data-before-grant", 2, MessageType::data, "GET admin/config", true},
      {"self-issued-grant", 0, MessageType::access_grant, "role=admin", true},
      {"client-sent-deny", 0, MessageType::access_deny, "revoke client-1", true},
      {"client-sent-hello", 0, MessageType::server_hello, "", true},
      {"admin-flavoured-request", 0, MessageType::access_request, "role=admin", false},
      {"revoked-device-request", 1, MessageType::access_request, "", true},
      {"register-over-data", 0, MessageType::data, "register dev-0000000000000000 allowed", false},
  };
  for (std::size_t round = 0; round < rounds; ++round) {
    for (const auto& a : attempts) {
      auto p = w.inject_from(a.device, packet_from(a.device, a.type, a.payload));
      const auto& e = p.result.event;
      const bool denied = e.verdict == server::Verdict::denied;
      const bool unchanged = levels() == expected_levels && identity_entries(w.server->ledger()) == identities;
      const bool held = unchanged && (!a.must_deny || denied);
      ++r.attempted;
      if (held) ++r.blocked;
      r.evidence.push_back(a.name + " -> " + (denied ? server::to_string(e.reason) : "granted") +
                           (unchanged ? " state unchanged" : " state changed"));
    }
  }
}

std::uint64_t salt_of(Category c, Target t) {
  return (static_cast<std::uint64_t>(c) + 1) * 1000003ull + (t == Target::server ? 7919ull : 0ull);
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, KeyPool* pool) {
  const auto& cfg = s.config;
  if (s.name == Category::dos_client && s.target != Target::client)
    throw ConfigError("dos_client scenarios target the client");
  if (s.name == Category::dos_server && s.target != Target::server)
    throw ConfigError("dos_server scenarios target the server");
  if (cfg.clients == 0) throw ConfigError("scenarios need at least one client");
  if (cfg.client_capacity == 0 || cfg.server_capacity == 0) throw ConfigError("capacities must be positive");
  if (cfg.budget_factor < 1.0) throw ConfigError("budget factor must be at least 1");
  if (cfg.tick.count() <= 0) throw ConfigError("tick must be positive");

  std::optional<KeyPool> own;
  if (!pool) pool = &own.emplace(cfg.key_bits);
  if (pool->bits() != cfg.key_bits) throw ConfigError("key pool size does not match key_bits");

  ScenarioReport r;
  r.category = s.name;
  r.target = s.target;
  r.seed = cfg.seed;
  const auto salt = salt_of(s.name, s.target);
  const std::size_t clients = std::max<std::size_t>(cfg.clients, 3);

  const bool client = s.target == Target::client;
  switch (s.name) {
    case Category::spoofing: {
      World w(cfg, *pool, salt, clients);
      client ? spoofing_client(w, r) : spoofing_server(w, r);
      break;
    }
    case Category::tampering: {
      World w(cfg, *pool, salt, clients);
      client ? tampering_client(w, r) : tampering_server(w, r);
      break;
    }
    case Category::repudiation: {
      World w(cfg, *pool, salt, clients);
      client ? repudiation_client(w, r) : repudiation_server(w, r);
      break;
    }
    case Category::info_disclosure: {
      if (client) {
        std::mt19937_64 g(cfg.seed + salt);
        ByteWriter bw;
        bw.u64(g());
        const Bytes banner = to_bytes("session-banner-" + to_hex(std::move(bw).take()));
        World w(cfg, *pool, salt, clients, banner);
        info_client(w, r, banner);
      } else {
        World w(cfg, *pool, salt, clients);
        info_server(w, r);
      }
      break;
    }
    case Category::dos_client: {
      World w(cfg, *pool, salt, 1);
      dos_client(w, r, *pool, salt ^ 0x5a5a);
      break;
    }
    case Category::dos_server: {
      World w(cfg, *pool, salt, 1);
      dos_server(w, r, *pool, salt ^ 0x5a5a);
      break;
    }
    case Category::privilege: {
      World w(cfg, *pool, salt, clients);
      client ? privilege_client(w, r) : privilege_server(w, r);
      break;
    }
  }
  finish(r);
  return r;
}

std::vector<Scenario> default_scenarios(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.seed = seed;
  std::vector<Scenario> out;
  for (auto t : {Target::client, Target::server})
    for (auto c : {Category::spoofing, Category::tampering, Category::repudiation, Category::info_disclosure,
                   t == Target::client ? Category::dos_client : Category::dos_server, Category::privilege})
      out.push_back(Scenario{c, t, cfg});
  return out;
}

std::vector<ScenarioReport> run_all(std::uint64_t seed, KeyPool* pool) {
  std::optional<KeyPool> own;
  if (!pool) pool = &own.emplace();
  std::vector<ScenarioReport> out;
  for (const auto& s : default_scenarios(seed)) out.push_back(run_scenario(s, pool));
  return out;
}

std::size_t column_of(Category c) {
  switch (c) {
    case Category::spoofing: return 0;
    case Category::tampering: return 1;
    case Category::repudiation: return 2;
    case Category::info_disclosure: return 3;
    case Category::dos_client:
    case Category::dos_server: return 4;
    case Category::privilege: return 5;
  }
  return 0;
}

CellVerdict expected_verdict(Category c, Target t) {
  if (t == Target::client && (c == Category::dos_client || c == Category::dos_server)) return CellVerdict::vulnerable;
  if (t == Target::server && c == Category::privilege) return CellVerdict::vulnerable;
  return CellVerdict::defended;
}

CellVerdict Matrix::at(Target t, std::size_t column) const {
  return cells.at(t == Target::client ? 0 : 1).at(column);
}

std::string Matrix::row(Target t) const {
  std::string s;
  for (std::size_t col = 0; col < kMatrixColumns.size(); ++col) {
    switch (at(t, col)) {
      case CellVerdict::defended: s += 'X'; break;
      case CellVerdict::vulnerable: s += '-'; break;
      case CellVerdict::untested: s += '?'; break;
    }
  }
  return s;
}

std::string Matrix::render() const {
  std::ostringstream out;
  out << "Aspect ";
  for (char c : kMatrixColumns) out << ' ' << c;
  out << '\n';
  for (auto t : {Target::client, Target::server}) {
    out << (t == Target::client ? "Client " : "Server ");
    for (char c : row(t)) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

Matrix stride_matrix(const std::vector<ScenarioReport>& reports) {
  Matrix m;
  for (auto& row : m.cells) row.fill(CellVerdict::untested);
  std::array<std::array<bool, 6>, 2> seen{};
  for (const auto& r : reports) {
    const std::size_t row = r.target == Target::client ? 0 : 1;
    const std::size_t col = column_of(r.category);
    if (seen[row][col])
      throw ConfigError(std::string("duplicate report for ") + to_string(r.category) + "/" + to_string(r.target));
    seen[row][col] = true;
    m.cells[row][col] = r.verdict;
  }
  return m;
}

Matrix expected_matrix() {
  Matrix m;
  for (auto t : {Target::client, Target::server})
    for (auto c : {Category::spoofing, Category::tampering, Category::repudiation, Category::info_disclosure,
                   Category::dos_client, Category::privilege})
      m.cells[t == Target::client ? 0 : 1][column_of(c)] = expected_verdict(c, t);
  return m;
}

std::string report_text(const std::vector<ScenarioReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_record() + "\n";
  const auto m = stride_matrix(reports);
  nlohmann::ordered_json j;
  j["type"] = "matrix";
  j["columns"] = std::string(kMatrixColumns.begin(), kMatrixColumns.end());
  j["client"] = m.row(Target::client);
  j["server"] = m.row(Target::server);
  j["matches_expected"] = m == expected_matrix();
  out += j.dump() + "\n";
  return out;
}

}  // namespace foggate::harness
