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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "foggate/bytes.hpp"
#include "foggate/crypto.hpp"
#include "foggate/identity.hpp"
#include "foggate/ledger.hpp"
#include "foggate/packet.hpp"

namespace foggate::server {

enum class Verdict : std::uint8_t { denied = 0x00, granted = 0x01 };

enum class DenyReason : std::uint8_t {
  none,
  not_registered,
  blocked,
  bad_signature,
  bad_inner,
  bad_outer,
  replay,
  bad_type,
};

const char* to_string(Verdict v);
const char* to_string(DenyReason r);

/// Digest recorded for a processed packet: hash(wire || verdict byte).
crypto::Digest transaction_digest(ByteView wire, Verdict verdict);

struct AuditEvent {
  std::uint64_t timestamp = 0;
  std::string sender_serial_id;  // as claimed; empty if the envelope never opened
  Verdict verdict = Verdict::denied;
  DenyReason reason = DenyReason::none;
  crypto::Digest tx_digest;
};

/// One line of the exported audit log.
std::string to_json_line(const AuditEvent& e);

struct ServerConfig {
  /// Nonce tokens older than this are forgotten. The inner message carries
  /// no timestamp, so a forgotten token can be replayed; 0 keeps every token
  /// for the life of the node.
  std::uint64_t replay_horizon_seconds = 0;
  /// Appended after the echoed request token in every GRANT.
  Bytes grant_banner = to_bytes("access granted");
  /// Seconds since epoch; defaults to the system clock.
  std::function<std::uint64_t()> clock;
};

struct ServerState {
  DeviceIdentity identity;
  ledger::Ledger ledger;
  std::set<crypto::Digest> granted_sessions;
  std::map<packet::NonceToken, std::uint64_t> seen_nonces;
  std::vector<AuditEvent> audit_log;
};

struct HandleResult {
  std::optional<Bytes> response;  // empty for silent denials
  AuditEvent event;
};

enum class AccessLevel { none, granted };

/// Server side of the access handshake. Not internally synchronized: one
/// owner applies packets in order.
///
/// handle_packet runs these stages and stops at the first failure:
///   1. remove the outer layer with the server private key   -> bad_outer
///   2. look the claimed serial up in the ledger              -> not_registered / blocked
///   3. open the inner layer under the claimed serial's key   -> bad_inner
///   4. verify the signature with the registered public key   -> bad_signature
///   5. reject nonce tokens already seen                      -> replay
///   6. ACCESS_REQUEST grants; DATA needs a granted session   -> bad_type
/// Failures in stages 1 and 2 are silent because no trusted key exists to
/// answer to. Later failures produce an ACCESS_DENY.
class ServerNode {
public:
  /// Throws IntegrityError if the ledger fails verify_chain.
  ServerNode(DeviceIdentity identity, ledger::Ledger ledger, ServerConfig config = {});

  Bytes make_hello() const;
  HandleResult handle_packet(ByteView wire);

  /// Appends a blocked registration and drops any granted session.
  /// Throws NotFound for unknown serials.
  void revoke(std::string_view serial_id);
  void register_device(std::string_view serial_id, const crypto::PublicKey& key,
                       ledger::DeviceStatus status);

  AccessLevel access_level(std::string_view serial_id) const;

  const ServerState& state() const { return state_; }
  const DeviceIdentity& identity() const { return state_.identity; }
  const ledger::Ledger& ledger() const { return state_.ledger; }
  const std::vector<AuditEvent>& audit_log() const { return state_.audit_log; }

  void export_audit(std::ostream& out) const;

private:
  std::uint64_t now() const;
  void prune_nonces(std::uint64_t now);
  Bytes respond(packet::MessageType type, const std::optional<packet::NonceToken>& echo,
                ByteView extra, const crypto::PublicKey& recipient) const;

  ServerState state_;
  ServerConfig config_;
};

}  // namespace foggate::server
