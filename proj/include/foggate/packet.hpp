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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "foggate/bytes.hpp"
#include "foggate/crypto.hpp"

// Three-layer packet:
//
//   wire               [version:1][wrapped_key_len:2][wrapped_key][env_nonce:12]
//                      [env_ct_len:4][env_ct]
//   envelope plaintext [serial_len:2][serial][sig_len:2][sig][inner_nonce:12]
//                      [inner_ct_len:4][inner_ct]
//   inner plaintext    [msg_type:1][serial_len:2][serial][nonce_token:16]
//                      [payload_len:4][payload]
//
// All integers big-endian. env_ct and inner_ct end with the 16-byte GCM tag.
// The envelope is hybrid-wrapped to the recipient; the inner layer is keyed by
// the hash of the sender serial; the signature covers the hash of the inner
// plaintext.
namespace foggate::packet {

inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::uint8_t kHelloVersion = 0xFF;
inline constexpr std::size_t kNonceTokenSize = 16;

enum class MessageType : std::uint8_t {
  access_request = 0x01,
  access_grant = 0x02,
  access_deny = 0x03,
  server_hello = 0x04,
  data = 0x05,
};

const char* to_string(MessageType t);
std::optional<MessageType> message_type_from_byte(std::uint8_t b);

using NonceToken = std::array<std::uint8_t, kNonceTokenSize>;

NonceToken fresh_token();

struct InnerMessage {
  MessageType msg_type = MessageType::access_request;
  std::string sender_serial_id;
  NonceToken nonce_token{};
  Bytes payload;

  /// Fills nonce_token with fresh randomness.
  static InnerMessage make(MessageType type, std::string sender, Bytes payload = {});

  bool operator==(const InnerMessage&) const = default;
};

Bytes encode_inner(const InnerMessage& msg);
/// Throws ParseError on bad framing, unknown type or empty serial.
InnerMessage decode_inner(ByteView data);

/// Digest that the packet signature covers.
crypto::Digest message_digest(const InnerMessage& msg);

/// Outer framing, independent of any key.
struct WireFrame {
  std::uint8_t version = kVersion;
  crypto::WrappedEnvelope envelope;

  bool operator==(const WireFrame&) const = default;
};

/// Throws VersionError for an unknown version byte, FramingError otherwise.
WireFrame decode_wire(ByteView wire);
Bytes encode_wire(const WireFrame& frame);

/// Envelope contents after the outer layer is removed.
struct SealedPacket {
  std::string sender_serial_id;
  crypto::Signature signature;
  std::array<std::uint8_t, crypto::kNonceSize> inner_nonce{};
  Bytes inner_ciphertext;

  bool operator==(const SealedPacket&) const = default;
};

Bytes encode_envelope(const SealedPacket& sealed);
/// Throws FramingError.
SealedPacket decode_envelope(ByteView plaintext);

/// Throws ConstructionError for an empty or oversized serial.
Bytes create_packet(const InnerMessage& msg, const crypto::PrivateKey& sender_private,
                    const crypto::PublicKey& recipient_public);

/// Removes the outer layer. Any failure throws OuterDecryptionError or one of
/// its subclasses (VersionError for the version byte, FramingError for lengths).
SealedPacket open_packet(ByteView wire, const crypto::PrivateKey& recipient_private);

/// InnerDecryptionError if the claimed serial's key does not open the inner
/// layer or the plaintext does not decode; IdentityMismatch if the decoded
/// sender differs from the claim.
InnerMessage decrypt_inner(const SealedPacket& sealed, std::string_view claimed_serial_id);

bool verify_packet_signature(const SealedPacket& sealed, const InnerMessage& inner,
                             const crypto::PublicKey& sender_public) noexcept;

// Server advertisement. Clients already hold the server key, so the hello is
// signed but not encrypted:
//   [0xFF][body_len:4][inner plaintext of a SERVER_HELLO][sig_len:2][sig]
struct Hello {
  InnerMessage body;
  crypto::Signature signature;
};

Bytes create_hello(const std::string& server_serial_id, const crypto::PrivateKey& server_private);
/// Throws VersionError or FramingError.
Hello parse_hello(ByteView wire);
bool verify_hello(const Hello& hello, const crypto::PublicKey& server_public) noexcept;

}  // namespace foggate::packet
