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

#include <random>

#include "foggate/errors.hpp"
#include "foggate/packet.hpp"
#include "oracles/sha256_ref.hpp"
#include "oracles/stage_oracle.hpp"
#include "support/test_keys.hpp"

using namespace foggate;
using packet::InnerMessage;
using packet::MessageType;
using testing_support::key;

namespace {

const std::string kClient = "dev-00112233aabbccdd";
const std::string kServer = "srv-0000000000000001";

Bytes request() {
  return packet::create_packet(InnerMessage::make(MessageType::access_request, kClient, to_bytes("hi")),
                               key("client").private_key, key("server").public_key);
}

}  // namespace

TEST(Packet, MessageTypeBytes) {
  EXPECT_EQ(packet::message_type_from_byte(0x01), MessageType::access_request);
  EXPECT_EQ(packet::message_type_from_byte(0x05), MessageType::data);
  EXPECT_FALSE(packet::message_type_from_byte(0x00));
  EXPECT_FALSE(packet::message_type_from_byte(0x06));
  EXPECT_STREQ(packet::to_string(MessageType::access_grant), "ACCESS_GRANT");
}

TEST(Packet, InnerLayout) {
  InnerMessage m{MessageType::data, "ab", {}, to_bytes("xyz")};
  m.nonce_token.fill(0x11);
  auto enc = packet::encode_inner(m);
  EXPECT_EQ(to_hex(enc), "050002" "6162" + std::string(32, '1') + "00000003" "78797a");
  EXPECT_EQ(packet::decode_inner(enc), m);
  EXPECT_EQ(packet::message_digest(m).bytes, oracle::sha256(enc));
}

TEST(Packet, InnerDecodeErrors) {
  InnerMessage m{MessageType::data, "ab", {}, {}};
  auto enc = packet::encode_inner(m);
  auto bad_type = enc;
  bad_type[0] = 0x09;
  EXPECT_THROW(packet::decode_inner(bad_type), ParseError);
  EXPECT_THROW(packet::decode_inner(ByteView(enc).first(enc.size() - 1)), ParseError);
  auto trailing = enc;
  trailing.push_back(0);
  EXPECT_THROW(packet::decode_inner(trailing), ParseError);
  InnerMessage empty{MessageType::data, "", {}, {}};
  EXPECT_THROW(packet::decode_inner(packet::encode_inner(empty)), ParseError);
}

TEST(Packet, FreshTokensDiffer) {
  EXPECT_NE(packet::fresh_token(), packet::fresh_token());
}

TEST(Packet, RoundTripThroughAllLayers) {
  auto msg = InnerMessage::make(MessageType::data, kClient, to_bytes("payload"));
  auto wire = packet::create_packet(msg, key("client").private_key, key("server").public_key);
  EXPECT_EQ(wire[0], packet::kVersion);
  auto sealed = packet::open_packet(wire, key("server").private_key);
  EXPECT_EQ(sealed.sender_serial_id, kClient);
  auto inner = packet::decrypt_inner(sealed, kClient);
  EXPECT_EQ(inner, msg);
  EXPECT_TRUE(packet::verify_packet_signature(sealed, inner, key("client").public_key));
  EXPECT_FALSE(packet::verify_packet_signature(sealed, inner, key("other").public_key));
}

TEST(Packet, WireLayoutMatchesIndependentParser) {
  auto wire = request();
  oracle::StageOracle o(key("server").private_key.handle());
  o.enroll(kClient, key("client").public_key.der());
  EXPECT_EQ(o.judge(wire), "granted");
  auto frame = packet::decode_wire(wire);
  EXPECT_EQ(frame.envelope.wrapped_key.size(), 256u);
  EXPECT_EQ(packet::encode_wire(frame), wire);
}

TEST(Packet, WireDecodeErrors) {
  auto wire = request();
  auto v = wire;
  v[0] = 0x02;
  EXPECT_THROW(packet::decode_wire(v), VersionError);
  EXPECT_THROW(packet::decode_wire(Bytes{}), FramingError);
  EXPECT_THROW(packet::decode_wire(ByteView(wire).first(wire.size() - 1)), FramingError);
  auto extra = wire;
  extra.push_back(0);
  EXPECT_THROW(packet::decode_wire(extra), FramingError);
  try {
    packet::decode_wire(v);
  } catch (const OuterDecryptionError&) {
    SUCCEED();  // version and framing failures share the outer base
  }
}

TEST(Packet, OpenWithWrongKeyIsOuterFailure) {
  EXPECT_THROW(packet::open_packet(request(), key("other").private_key), OuterDecryptionError);
}

TEST(Packet, ClaimedSerialMustMatchInnerKey) {
  auto sealed = packet::open_packet(request(), key("server").private_key);
  EXPECT_THROW(packet::decrypt_inner(sealed, "dev-someone-else"), InnerDecryptionError);
}

TEST(Packet, SwappedEnvelopeSerialIsIdentityMismatch) {
  // Inner layer encrypted under serial A but declaring serial B.
  InnerMessage m = InnerMessage::make(MessageType::access_request, "dev-B");
  auto plain = packet::encode_inner(m);
  auto inner = crypto::symmetric_encrypt(crypto::derive_inner_key("dev-A"), plain);
  packet::SealedPacket sealed{"dev-A", crypto::sign(key("client").private_key, crypto::one_way_hash(plain)),
                              inner.nonce, inner.ciphertext};
  EXPECT_THROW(packet::decrypt_inner(sealed, "dev-A"), IdentityMismatch);
}

TEST(Packet, EnvelopeCodec) {
  packet::SealedPacket s{"dev-1", crypto::Signature{Bytes(256, 7)}, {}, Bytes(40, 9)};
  s.inner_nonce.fill(3);
  auto enc = packet::encode_envelope(s);
  EXPECT_EQ(packet::decode_envelope(enc), s);
  EXPECT_THROW(packet::decode_envelope(ByteView(enc).first(10)), FramingError);
  packet::SealedPacket empty = s;
  empty.sender_serial_id.clear();
  EXPECT_THROW(packet::decode_envelope(packet::encode_envelope(empty)), FramingError);
}

TEST(Packet, ConstructionErrors) {
  InnerMessage m = InnerMessage::make(MessageType::access_request, "");
  EXPECT_THROW(packet::create_packet(m, key("client").private_key, key("server").public_key), ConstructionError);
  InnerMessage huge = InnerMessage::make(MessageType::access_request, std::string(70000, 'x'));
  EXPECT_THROW(packet::create_packet(huge, key("client").private_key, key("server").public_key), ConstructionError);
}

TEST(Packet, RandomizedRoundTrips) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    std::string serial = "dev-";
    for (std::size_t k = 0, n = 1 + rng() % 40; k < n; ++k) serial.push_back(static_cast<char>('a' + rng() % 26));
    Bytes payload(rng() % 2000);
    for (auto& c : payload) c = static_cast<std::uint8_t>(rng());
    auto type = *packet::message_type_from_byte(static_cast<std::uint8_t>(1 + rng() % 5));
    auto msg = InnerMessage::make(type, serial, payload);
    auto wire = packet::create_packet(msg, key("client").private_key, key("server").public_key);
    EXPECT_EQ(packet::encode_wire(packet::decode_wire(wire)), wire);
    auto sealed = packet::open_packet(wire, key("server").private_key);
    EXPECT_EQ(packet::decode_envelope(packet::encode_envelope(sealed)), sealed);
    auto inner = packet::decrypt_inner(sealed, serial);
    ASSERT_EQ(inner, msg);
    EXPECT_TRUE(packet::verify_packet_signature(sealed, inner, key("client").public_key));
  }
}

TEST(Hello, SignedAdvertisement) {
  auto wire = packet::create_hello(kServer, key("server").private_key);
  EXPECT_EQ(wire[0], packet::kHelloVersion);
  auto hello = packet::parse_hello(wire);
  EXPECT_EQ(hello.body.sender_serial_id, kServer);
  EXPECT_EQ(hello.body.msg_type, MessageType::server_hello);
  EXPECT_TRUE(packet::verify_hello(hello, key("server").public_key));
  EXPECT_FALSE(packet::verify_hello(hello, key("other").public_key));
  auto bad = wire;
  bad.back() ^= 1;
  EXPECT_FALSE(packet::verify_hello(packet::parse_hello(bad), key("server").public_key));
  EXPECT_THROW(packet::parse_hello(request()), VersionError);
  EXPECT_THROW(packet::parse_hello(ByteView(wire).first(8)), FramingError);
  EXPECT_THROW(packet::create_hello("", key("server").private_key), ConstructionError);
}
