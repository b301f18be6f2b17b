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

#include "foggate/packet.hpp"

#include <algorithm>

#include "foggate/errors.hpp"

namespace foggate::packet {

using crypto::kNonceSize;

const char* to_string(MessageType t) {
  switch (t) {
    case MessageType::access_request: return "ACCESS_REQUEST";
    case MessageType::access_grant: return "ACCESS_GRANT";
    case MessageType::access_deny: return "ACCESS_DENY";
    case MessageType::server_hello: return "SERVER_HELLO";
    case MessageType::data: return "DATA";
  }
  return "UNKNOWN";
}

std::optional<MessageType> message_type_from_byte(std::uint8_t b) {
  if (b < 0x01 || b > 0x05) return std::nullopt;
  return static_cast<MessageType>(b);
}

NonceToken fresh_token() {
  NonceToken t{};
  auto r = crypto::random_bytes(t.size());
  std::copy(r.begin(), r.end(), t.begin());
  return t;
}

InnerMessage InnerMessage::make(MessageType type, std::string sender, Bytes payload) {
  return InnerMessage{type, std::move(sender), fresh_token(), std::move(payload)};
}

Bytes encode_inner(const InnerMessage& msg) {
  ByteWriter w(1 + 2 + msg.sender_serial_id.size() + kNonceTokenSize + 4 + msg.payload.size());
  w.u8(static_cast<std::uint8_t>(msg.msg_type))
      .var16(as_bytes(msg.sender_serial_id))
      .raw(msg.nonce_token)
      .var32(msg.payload);
  return std::move(w).take();
}

InnerMessage decode_inner(ByteView data) {
  ByteReader r(data);
  InnerMessage msg;
  auto type = message_type_from_byte(r.u8());
  if (!type) throw ParseError("unknown message type");
  msg.msg_type = *type;
  msg.sender_serial_id = foggate::to_string(r.var16());
  if (msg.sender_serial_id.empty()) throw ParseError("empty sender serial");
  auto token = r.raw(kNonceTokenSize);
  std::copy(token.begin(), token.end(), msg.nonce_token.begin());
  auto payload = r.var32();
  msg.payload.assign(payload.begin(), payload.end());
  r.expect_done("inner message");
  return msg;
}

crypto::Digest message_digest(const InnerMessage& msg) { return crypto::one_way_hash(encode_inner(msg)); }

WireFrame decode_wire(ByteView wire) {
  if (wire.empty()) throw FramingError("empty packet");
  if (wire[0] != kVersion) throw VersionError("unsupported packet version");
  try {
    ByteReader r(wire);
    WireFrame f;
    f.version = r.u8();
    auto wrapped = r.var16();
    f.envelope.wrapped_key.assign(wrapped.begin(), wrapped.end());
    auto nonce = r.raw(kNonceSize);
    std::copy(nonce.begin(), nonce.end(), f.envelope.nonce.begin());
    auto ct = r.var32();
    f.envelope.ciphertext.assign(ct.begin(), ct.end());
    r.expect_done("packet");
    return f;
  } catch (const ParseError& e) {
    throw FramingError(std::string("outer framing: ") + e.what());
  }
}

Bytes encode_wire(const WireFrame& frame) {
  ByteWriter w(1 + 2 + frame.envelope.wrapped_key.size() + kNonceSize + 4 +
               frame.envelope.ciphertext.size());
  w.u8(frame.version)
      .var16(frame.envelope.wrapped_key)
      .raw(frame.envelope.nonce)
      .var32(frame.envelope.ciphertext);
  return std::move(w).take();
}

Bytes encode_envelope(const SealedPacket& sealed) {
  ByteWriter w;
  w.var16(as_bytes(sealed.sender_serial_id))
      .var16(sealed.signature.bytes)
      .raw(sealed.inner_nonce)
      .var32(sealed.inner_ciphertext);
  return std::move(w).take();
}

SealedPacket decode_envelope(ByteView plaintext) {
  try {
    ByteReader r(plaintext);
    SealedPacket s;
    s.sender_serial_id = foggate::to_string(r.var16());
    if (s.sender_serial_id.empty()) throw ParseError("empty sender serial");
    auto sig = r.var16();
    s.signature.bytes.assign(sig.begin(), sig.end());
    auto nonce = r.raw(kNonceSize);
    std::copy(nonce.begin(), nonce.end(), s.inner_nonce.begin());
    auto ct = r.var32();
    s.inner_ciphertext.assign(ct.begin(), ct.end());
    r.expect_done("envelope");
    return s;
  } catch (const ParseError& e) {
    throw FramingError(std::string("envelope framing: ") + e.what());
  }
}

Bytes create_packet(const InnerMessage& msg, const crypto::PrivateKey& sender_private,
                    const crypto::PublicKey& recipient_public) {
  if (msg.sender_serial_id.empty()) throw ConstructionError("sender serial ID must not be empty");
  if (msg.sender_serial_id.size() > 0xFFFF) throw ConstructionError("sender serial ID too long");
  try {
    auto plaintext = encode_inner(msg);
    auto inner = crypto::symmetric_encrypt(crypto::derive_inner_key(msg.sender_serial_id), plaintext);
    SealedPacket sealed;
    sealed.sender_serial_id = msg.sender_serial_id;
    sealed.signature = crypto::sign(sender_private, crypto::one_way_hash(plaintext));
    sealed.inner_nonce = inner.nonce;
    sealed.inner_ciphertext = std::move(inner.ciphertext);
    WireFrame frame{kVersion, crypto::hybrid_wrap(recipient_public, encode_envelope(sealed))};
    return encode_wire(frame);
  } catch (const InvalidArgument& e) {
    throw ConstructionError(e.what());
  } catch (const CryptoError& e) {
    throw ConstructionError(e.what());
  }
}

SealedPacket open_packet(ByteView wire, const crypto::PrivateKey& recipient_private) {
  auto frame = decode_wire(wire);
  Bytes plaintext;
  try {
    plaintext = crypto::hybrid_unwrap(recipient_private, frame.envelope);
  } catch (const DecryptionFailure&) {
    throw OuterDecryptionError("outer layer does not decrypt");
  } catch (const CryptoError&) {
    throw OuterDecryptionError("outer layer does not decrypt");
  }
  return decode_envelope(plaintext);
}

InnerMessage decrypt_inner(const SealedPacket& sealed, std::string_view claimed_serial_id) {
  if (claimed_serial_id.empty()) throw InnerDecryptionError("no claimed serial ID");
  Bytes plaintext;
  try {
    plaintext = crypto::symmetric_decrypt(crypto::derive_inner_key(claimed_serial_id),
                                          sealed.inner_nonce, sealed.inner_ciphertext);
  } catch (const DecryptionFailure&) {
    throw InnerDecryptionError("inner layer does not decrypt under the claimed serial");
  }
  InnerMessage msg;
  try {
    msg = decode_inner(plaintext);
  } catch (const ParseError& e) {
    throw InnerDecryptionError(std::string("inner message: ") + e.what());
  }
  if (msg.sender_serial_id != claimed_serial_id)
    throw IdentityMismatch("inner sender does not match envelope sender");
  return msg;
}

bool verify_packet_signature(const SealedPacket& sealed, const InnerMessage& inner,
                             const crypto::PublicKey& sender_public) noexcept {
  try {
    return crypto::verify(sender_public, message_digest(inner), sealed.signature);
  } catch (...) {
    return false;
  }
}

Bytes create_hello(const std::string& server_serial_id, const crypto::PrivateKey& server_private) {
  if (server_serial_id.empty()) throw ConstructionError("server serial ID must not be empty");
  auto body = encode_inner(InnerMessage::make(MessageType::server_hello, server_serial_id));
  auto sig = crypto::sign(server_private, crypto::one_way_hash(body));
  ByteWriter w;
  w.u8(kHelloVersion).var32(body).var16(sig.bytes);
  return std::move(w).take();
}

Hello parse_hello(ByteView wire) {
  if (wire.empty()) throw FramingError("empty hello");
  if (wire[0] != kHelloVersion) throw VersionError("not a hello frame");
  try {
    ByteReader r(wire);
    r.u8();
    Hello h;
    h.body = decode_inner(r.var32());
    auto sig = r.var16();
    h.signature.bytes.assign(sig.begin(), sig.end());
    r.expect_done("hello");
    if (h.body.msg_type != MessageType::server_hello) throw ParseError("hello body has wrong type");
    return h;
  } catch (const ParseError& e) {
    throw FramingError(std::string("hello framing: ") + e.what());
  }
}

bool verify_hello(const Hello& hello, const crypto::PublicKey& server_public) noexcept {
  return verify_packet_signature(SealedPacket{{}, hello.signature, {}, {}}, hello.body, server_public);
}

}  // namespace foggate::packet
