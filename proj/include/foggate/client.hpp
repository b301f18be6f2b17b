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

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "foggate/bytes.hpp"
#include "foggate/crypto.hpp"
#include "foggate/identity.hpp"
#include "foggate/packet.hpp"

namespace foggate::client {

using Millis = std::chrono::milliseconds;

enum class Phase { idle, discovered, requested, granted, denied };
const char* to_string(Phase p);

struct ClientConfig {
  /// Pre-provisioned server serial; when set the client starts discovered
  /// and hellos must carry this serial.
  std::optional<std::string> server_serial_id;
  Millis response_timeout{5000};
};

enum class NoteKind {
  hello_accepted,
  hello_rejected,
  response_accepted,
  response_discarded,
  ack_accepted,
  ack_discarded,
  timeout,
};
const char* to_string(NoteKind k);

/// Local audit record; frame_digest is the hash of the received frame bytes.
struct ClientNote {
  NoteKind kind;
  crypto::Digest frame_digest;
  std::string detail;
};

/// Client side of the handshake:
///   idle -> discovered (authentic hello) -> requested -> granted | denied,
/// with requested falling back to discovered when the response deadline
/// passes. Every check uses the server key given at construction.
class ClientNode {
public:
  ClientNode(DeviceIdentity identity, crypto::PublicKey server_public, ClientConfig config = {});

  Phase phase() const { return phase_; }
  const DeviceIdentity& identity() const { return identity_; }
  const crypto::PublicKey& server_public() const { return server_public_; }
  const std::optional<std::string>& server_serial_id() const { return server_serial_; }

  /// Returns true if the hello was authentic. Only acts while idle or
  /// discovered; failures leave the phase unchanged.
  bool on_hello(ByteView wire);

  /// Throws StateError unless discovered. `now` starts the response timer.
  Bytes request_access(Millis now = Millis{0});

  /// Accepts a GRANT or DENY bound to the outstanding request. Anything
  /// else is discarded and the client stays requested.
  bool on_response(ByteView wire);

  /// Throws StateError unless granted.
  Bytes send_data(ByteView payload);

  /// Verifies the server acknowledgement of the last DATA packet.
  bool on_data_ack(ByteView wire);

  /// Re-arms requested -> discovered once the deadline has passed.
  void tick(Millis now);

  /// Payload of the last accepted response after the echoed token.
  const Bytes& last_response_payload() const { return last_payload_; }
  const std::vector<ClientNote>& notes() const { return notes_; }

private:
  std::optional<packet::InnerMessage> authenticate(ByteView wire, const packet::NonceToken& expected,
                                                   std::string& why) const;
  void note(NoteKind kind, ByteView wire, std::string detail = {});

  const DeviceIdentity identity_;
  const crypto::PublicKey server_public_;
  ClientConfig config_;
  std::optional<std::string> server_serial_;
  Phase phase_ = Phase::idle;
  std::optional<packet::NonceToken> pending_request_;
  std::optional<packet::NonceToken> pending_data_;
  Millis deadline_{0};
  Bytes last_payload_;
  std::vector<ClientNote> notes_;
};

}  // namespace foggate::client
