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

#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "foggate/errors.hpp"
#include "foggate/server.hpp"
#include "oracles/sha256_ref.hpp"
#include "oracles/stage_oracle.hpp"
#include "support/test_keys.hpp"

using namespace foggate;
using packet::InnerMessage;
using packet::MessageType;
using server::DenyReason;
using server::ServerNode;
using server::Verdict;
using testing_support::key;

namespace {

const std::string kServer = "srv-test";
const std::string kAlice = "dev-alice";
const std::string kBob = "dev-bob";
const std::string kMallory = "dev-mallory";

struct Fixture {
  std::uint64_t clock = 1'000'000;
  std::unique_ptr<ServerNode> node;

  explicit Fixture(server::ServerConfig cfg = {}) {
    auto l = ledger::Ledger::genesis(1)
                 .register_device(kAlice, key("alice").public_key, ledger::DeviceStatus::allowed, 2)
                 .register_device(kBob, key("bob").public_key, ledger::DeviceStatus::blocked, 3);
    cfg.clock = [this] { return clock; };
    node = std::make_unique<ServerNode>(DeviceIdentity{kServer, key("server")}, l, cfg);
  }
};

Bytes packet_from(const std::string& serial, const std::string& role, MessageType t, Bytes payload = {}) {
  return packet::create_packet(InnerMessage::make(t, serial, std::move(payload)), key(role).private_key,
                               key("server").public_key);
}

// Valid envelope whose inner layer is keyed by a different serial.
Bytes wrong_inner_key(const std::string& claimed, const std::string& role) {
  auto msg = InnerMessage::make(MessageType::access_request, claimed);
  auto plain = packet::encode_inner(msg);
  auto inner = crypto::symmetric_encrypt(crypto::derive_inner_key(claimed + "-x"), plain);
  packet::SealedPacket s{claimed, crypto::sign(key(role).private_key, crypto::one_way_hash(plain)), inner.nonce,
                         inner.ciphertext};
  return packet::encode_wire(
      packet::WireFrame{packet::kVersion, crypto::hybrid_wrap(key("server").public_key, packet::encode_envelope(s))});
}

InnerMessage open_response(const Bytes& wire, const std::string& role) {
  auto sealed = packet::open_packet(wire, key(role).private_key);
  EXPECT_EQ(sealed.sender_serial_id, kServer);
  auto inner = packet::decrypt_inner(sealed, sealed.sender_serial_id);
  EXPECT_TRUE(packet::verify_packet_signature(sealed, inner, key("server").public_key));
  return inner;
}

}  // namespace

TEST(Server, RejectsInvalidLedger) {
  auto blocks = ledger::Ledger::genesis(1).register_device(kAlice, key("alice").public_key,
                                                           ledger::DeviceStatus::allowed).blocks();
  blocks[1].timestamp += 1;
  EXPECT_THROW(ServerNode(DeviceIdentity{kServer, key("server")}, ledger::Ledger::from_blocks(blocks)),
               IntegrityError);
}

TEST(Server, GrantsRegisteredRequestAndEchoesToken) {
  Fixture f;
  auto msg = InnerMessage::make(MessageType::access_request, kAlice);
  auto wire = packet::create_packet(msg, key("alice").private_key, key("server").public_key);
  auto r = f.node->handle_packet(wire);
  EXPECT_EQ(r.event.verdict, Verdict::granted);
  EXPECT_EQ(r.event.reason, DenyReason::none);
  EXPECT_EQ(r.event.sender_serial_id, kAlice);
  ASSERT_TRUE(r.response);
  auto inner = open_response(*r.response, "alice");
  EXPECT_EQ(inner.msg_type, MessageType::access_grant);
  ASSERT_GE(inner.payload.size(), 16u);
  EXPECT_TRUE(std::equal(msg.nonce_token.begin(), msg.nonce_token.end(), inner.payload.begin()));
  EXPECT_EQ(std::string(inner.payload.begin() + 16, inner.payload.end()), "access granted");
  EXPECT_EQ(f.node->access_level(kAlice), server::AccessLevel::granted);
}

TEST(Server, TransactionDigestAndLedgerRecord) {
  Fixture f;
  const auto before = f.node->ledger().size();
  auto wire = packet_from(kAlice, "alice", MessageType::access_request);
  auto r = f.node->handle_packet(wire);
  Bytes with_verdict = wire;
  with_verdict.push_back(0x01);
  EXPECT_EQ(r.event.tx_digest.bytes, oracle::sha256(with_verdict));
  ASSERT_EQ(f.node->ledger().size(), before + 1);
  const auto& e = f.node->ledger().tip().entries.at(0);
  EXPECT_EQ(e.kind, ledger::EntryKind::transaction_record);
  EXPECT_EQ(*e.tx_digest, r.event.tx_digest);
  EXPECT_EQ(e.serial_id_digest.bytes, oracle::sha256(kAlice));
  EXPECT_EQ(e.timestamp, f.clock);
  EXPECT_TRUE(f.node->ledger().verify_chain().valid);
}

TEST(Server, SilentStages) {
  Fixture f;
  auto junk = f.node->handle_packet(Bytes{1, 2, 3});
  EXPECT_EQ(junk.event.reason, DenyReason::bad_outer);
  EXPECT_FALSE(junk.response);
  EXPECT_TRUE(junk.event.sender_serial_id.empty());

  auto unknown = f.node->handle_packet(packet_from(kMallory, "mallory", MessageType::access_request));
  EXPECT_EQ(unknown.event.reason, DenyReason::not_registered);
  EXPECT_FALSE(unknown.response);

  auto blocked = f.node->handle_packet(packet_from(kBob, "bob", MessageType::access_request));
  EXPECT_EQ(blocked.event.reason, DenyReason::blocked);
  EXPECT_FALSE(blocked.response);

  // Sealed to some other key: the server cannot open it.
  auto misdirected = packet::create_packet(InnerMessage::make(MessageType::access_request, kAlice),
                                           key("alice").private_key, key("other").public_key);
  EXPECT_EQ(f.node->handle_packet(misdirected).event.reason, DenyReason::bad_outer);
  EXPECT_EQ(f.node->audit_log().size(), 4u);
}

TEST(Server, AnsweredDenials) {
  Fixture f;
  auto stolen = f.node->handle_packet(packet_from(kAlice, "mallory", MessageType::access_request));
  EXPECT_EQ(stolen.event.reason, DenyReason::bad_signature);
  ASSERT_TRUE(stolen.response);
  auto deny = open_response(*stolen.response, "alice");
  EXPECT_EQ(deny.msg_type, MessageType::access_deny);
  EXPECT_EQ(std::string(deny.payload.begin() + 16, deny.payload.end()), "bad-signature");

  auto inner = f.node->handle_packet(wrong_inner_key(kAlice, "alice"));
  EXPECT_EQ(inner.event.reason, DenyReason::bad_inner);
  ASSERT_TRUE(inner.response);
  EXPECT_EQ(to_string(open_response(*inner.response, "alice").payload), "bad-inner");

  auto early_data = f.node->handle_packet(packet_from(kAlice, "alice", MessageType::data));
  EXPECT_EQ(early_data.event.reason, DenyReason::bad_type);
  for (auto t : {MessageType::access_grant, MessageType::access_deny, MessageType::server_hello})
    EXPECT_EQ(f.node->handle_packet(packet_from(kAlice, "alice", t)).event.reason, DenyReason::bad_type);
  EXPECT_EQ(f.node->access_level(kAlice), server::AccessLevel::none);
}

TEST(Server, ReplayIsDenied) {
  Fixture f;
  auto wire = packet_from(kAlice, "alice", MessageType::access_request);
  EXPECT_EQ(f.node->handle_packet(wire).event.verdict, Verdict::granted);
  auto again = f.node->handle_packet(wire);
  EXPECT_EQ(again.event.reason, DenyReason::replay);
  f.clock += 365 * 24 * 3600;
  EXPECT_EQ(f.node->handle_packet(wire).event.reason, DenyReason::replay);
}

TEST(Server, HorizonForgetsOldTokensWhenConfigured) {
  server::ServerConfig cfg;
  cfg.replay_horizon_seconds = 60;
  Fixture f(cfg);
  auto wire = packet_from(kAlice, "alice", MessageType::access_request);
  f.node->handle_packet(wire);
  f.clock += 30;
  EXPECT_EQ(f.node->handle_packet(wire).event.reason, DenyReason::replay);
  f.clock += 120;
  EXPECT_EQ(f.node->handle_packet(wire).event.verdict, Verdict::granted);
}

TEST(Server, DataAfterGrantIsAcknowledged) {
  Fixture f;
  f.node->handle_packet(packet_from(kAlice, "alice", MessageType::access_request));
  auto msg = InnerMessage::make(MessageType::data, kAlice, to_bytes("reading"));
  auto r = f.node->handle_packet(packet::create_packet(msg, key("alice").private_key, key("server").public_key));
  EXPECT_EQ(r.event.verdict, Verdict::granted);
  auto ack = open_response(*r.response, "alice");
  EXPECT_EQ(ack.msg_type, MessageType::access_grant);
  EXPECT_TRUE(std::equal(msg.nonce_token.begin(), msg.nonce_token.end(), ack.payload.begin()));
}

TEST(Server, RevokeBlocksAndDropsSession) {
  Fixture f;
  f.node->handle_packet(packet_from(kAlice, "alice", MessageType::access_request));
  f.node->revoke(kAlice);
  EXPECT_EQ(f.node->access_level(kAlice), server::AccessLevel::none);
  EXPECT_EQ(f.node->handle_packet(packet_from(kAlice, "alice", MessageType::data)).event.reason,
            DenyReason::blocked);
  EXPECT_THROW(f.node->revoke("dev-nobody"), NotFound);
  f.node->register_device(kBob, key("bob").public_key, ledger::DeviceStatus::allowed);
  EXPECT_EQ(f.node->handle_packet(packet_from(kBob, "bob", MessageType::access_request)).event.verdict,
            Verdict::granted);
}

TEST(Server, HelloIsSignedByServer) {
  Fixture f;
  auto hello = packet::parse_hello(f.node->make_hello());
  EXPECT_EQ(hello.body.sender_serial_id, kServer);
  EXPECT_TRUE(packet::verify_hello(hello, key("server").public_key));
}

TEST(Server, AuditExportIsJsonLines) {
  Fixture f;
  f.node->handle_packet(packet_from(kAlice, "alice", MessageType::access_request));
  f.node->handle_packet(Bytes{9});
  std::ostringstream out;
  f.node->export_audit(out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["verdict"], "granted");
  EXPECT_EQ(rows[0]["sender"], kAlice);
  EXPECT_EQ(rows[1]["reason"], "bad-outer");
  EXPECT_EQ(rows[1]["tx_digest"], f.node->audit_log()[1].tx_digest.hex());
}

// Randomized traffic judged by both the server and the independent oracle.
TEST(Server, AgreesWithStageOracle) {
  Fixture f;
  oracle::StageOracle o(key("server").private_key.handle());
  o.enroll(kAlice, key("alice").public_key.der());
  o.enroll(kBob, key("bob").public_key.der(), true);
  std::mt19937_64 rng(77);
  std::vector<Bytes> history;
  for (int i = 0; i < 120; ++i) {
    Bytes wire;
    switch (rng() % 9) {
      case 0: wire = packet_from(kAlice, "alice", MessageType::access_request); break;
      case 1: wire = packet_from(kAlice, "alice", MessageType::data, to_bytes("d")); break;
      case 2: wire = packet_from(kAlice, "mallory", MessageType::access_request); break;
      case 3: wire = packet_from(kMallory, "mallory", MessageType::access_request); break;
      case 4: wire = packet_from(kBob, "bob", MessageType::access_request); break;
      case 5: wire = wrong_inner_key(kAlice, "alice"); break;
      case 6:
        wire = history.empty() ? Bytes{1} : history[rng() % history.size()];
        break;
      case 7: {
        wire = history.empty() ? Bytes{1, 0} : history[rng() % history.size()];
        wire[rng() % wire.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        break;
      }
      default:
        wire = packet_from(kAlice, "alice",
                           *packet::message_type_from_byte(static_cast<std::uint8_t>(2 + rng() % 3)));
    }
    history.push_back(wire);
    auto r = f.node->handle_packet(wire);
    const std::string got = r.event.verdict == Verdict::granted ? "granted" : server::to_string(r.event.reason);
    ASSERT_EQ(got, o.judge(wire)) << "packet " << i;
    f.clock += 1;
  }
  EXPECT_EQ(f.node->audit_log().size(), 120u);
  EXPECT_TRUE(f.node->ledger().verify_chain().valid);
}
