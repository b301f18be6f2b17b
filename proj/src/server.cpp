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

#include "foggate/server.hpp"

#include <json.hpp>

#include "foggate/errors.hpp"

namespace foggate::server {

using packet::MessageType;

const char* to_string(Verdict v) { return v == Verdict::granted ? "granted" : "denied"; }

const char* to_string(DenyReason r) {
  switch (r) {
    case DenyReason::none: return "none";
    case DenyReason::not_registered: return "not-registered";
    case DenyReason::blocked: return "blocked";
    case DenyReason::bad_signature: return "bad-signature";
    case DenyReason::bad_inner: return "bad-inner";
    case DenyReason::bad_outer: return "bad-outer";
    case DenyReason::replay: return "replay";
    case DenyReason::bad_type: return "bad-type";
  }
  return "unknown";
}

crypto::Digest transaction_digest(ByteView wire, Verdict verdict) {
  Bytes buf(wire.begin(), wire.end());
  buf.push_back(static_cast<std::uint8_t>(verdict));
  return crypto::one_way_hash(buf);
}

std::string to_json_line(const AuditEvent& e) {
  nlohmann::ordered_json j;
  j["timestamp"] = e.timestamp;
  j["sender"] = e.sender_serial_id;
  j["verdict"] = to_string(e.verdict);
  j["reason"] = to_string(e.reason);
  j["tx_digest"] = e.tx_digest.hex();
  return j.dump();
}

ServerNode::ServerNode(DeviceIdentity identity, ledger::Ledger ledger, ServerConfig config)
    : state_{std::move(identity), std::move(ledger), {}, {}, {}}, config_(std::move(config)) {
  auto report = state_.ledger.verify_chain();
  if (!report.valid)
    throw IntegrityError("server ledger invalid at block " +
                         std::to_string(report.first_bad_index.value_or(0)));
}

std::uint64_t ServerNode::now() const {
  return config_.clock ? config_.clock() : ledger::now_seconds();
}

Bytes ServerNode::make_hello() const {
  return packet::create_hello(state_.identity.serial_id, state_.identity.private_key());
}

void ServerNode::prune_nonces(std::uint64_t now) {
  if (config_.replay_horizon_seconds == 0) return;
  for (auto it = state_.seen_nonces.begin(); it != state_.seen_nonces.end();) {
    if (now >= it->second && now - it->second > config_.replay_horizon_seconds)
      it = state_.seen_nonces.erase(it);
    else
      ++it;
  }
}

Bytes ServerNode::respond(MessageType type, const std::optional<packet::NonceToken>& echo,
                          ByteView extra, const crypto::PublicKey& recipient) const {
  ByteWriter payload;
  if (echo) payload.raw(*echo);
  payload.raw(extra);
  auto msg = packet::InnerMessage::make(type, state_.identity.serial_id, std::move(payload).take());
  return packet::create_packet(msg, state_.identity.private_key(), recipient);
}

HandleResult ServerNode::handle_packet(ByteView wire) {
  const auto ts = now();
  prune_nonces(ts);

  HandleResult result;
  auto finish = [&](Verdict verdict, DenyReason reason, std::optional<Bytes> response) {
    result.event.timestamp = ts;
    result.event.verdict = verdict;
    result.event.reason = reason;
    result.event.tx_digest = transaction_digest(wire, verdict);
    result.response = std::move(response);
    auto serial_digest = result.event.sender_serial_id.empty()
                             ? crypto::Digest::zero()
                             : crypto::one_way_hash(result.event.sender_serial_id);
    state_.ledger = std::move(state_.ledger).record_transaction(result.event.tx_digest, serial_digest, ts);
    state_.audit_log.push_back(result.event);
    return result;
  };

  packet::SealedPacket sealed;
  try {
    sealed = packet::open_packet(wire, state_.identity.private_key());
  } catch (const OuterDecryptionError&) {
    return finish(Verdict::denied, DenyReason::bad_outer, std::nullopt);
  }
  result.event.sender_serial_id = sealed.sender_serial_id;

  auto entry = state_.ledger.lookup(sealed.sender_serial_id);
  if (!entry) return finish(Verdict::denied, DenyReason::not_registered, std::nullopt);
  if (entry->status == ledger::DeviceStatus::blocked)
    return finish(Verdict::denied, DenyReason::blocked, std::nullopt);
  std::optional<crypto::PublicKey> sender_key;
  try {
    sender_key = crypto::PublicKey::from_der(*entry->public_key);
  } catch (const InvalidArgument&) {
    return finish(Verdict::denied, DenyReason::not_registered, std::nullopt);
  }

  auto deny = [&](DenyReason reason, const std::optional<packet::NonceToken>& echo) {
    return finish(Verdict::denied, reason,
                  respond(MessageType::access_deny, echo, as_bytes(to_string(reason)), *sender_key));
  };

  packet::InnerMessage inner;
  try {
    inner = packet::decrypt_inner(sealed, sealed.sender_serial_id);
  } catch (const InnerDecryptionError&) {
    return deny(DenyReason::bad_inner, std::nullopt);
  } catch (const IdentityMismatch&) {
    return deny(DenyReason::bad_inner, std::nullopt);
  }

  if (!packet::verify_packet_signature(sealed, inner, *sender_key))
    return deny(DenyReason::bad_signature, inner.nonce_token);

  if (!state_.seen_nonces.emplace(inner.nonce_token, ts).second)
    return deny(DenyReason::replay, inner.nonce_token);

  const auto serial_digest = crypto::one_way_hash(inner.sender_serial_id);
  switch (inner.msg_type) {
    case MessageType::access_request:
      state_.granted_sessions.insert(serial_digest);
      break;
    case MessageType::data:
      if (!state_.granted_sessions.contains(serial_digest))
        return deny(DenyReason::bad_type, inner.nonce_token);
      break;
    default:
      return deny(DenyReason::bad_type, inner.nonce_token);
  }
  return finish(Verdict::granted, DenyReason::none,
                respond(MessageType::access_grant, inner.nonce_token, config_.grant_banner, *sender_key));
}

void ServerNode::revoke(std::string_view serial_id) {
  auto entry = state_.ledger.lookup(serial_id);
  if (!entry) throw NotFound("serial ID is not registered");
  state_.ledger = state_.ledger.register_device(serial_id, *entry->public_key,
                                                ledger::DeviceStatus::blocked, now());
  state_.granted_sessions.erase(crypto::one_way_hash(serial_id));
}

void ServerNode::register_device(std::string_view serial_id, const crypto::PublicKey& key,
                                 ledger::DeviceStatus status) {
  state_.ledger = state_.ledger.register_device(serial_id, key, status, now());
  if (status == ledger::DeviceStatus::blocked)
    state_.granted_sessions.erase(crypto::one_way_hash(serial_id));
}

AccessLevel ServerNode::access_level(std::string_view serial_id) const {
  return state_.granted_sessions.contains(crypto::one_way_hash(serial_id)) ? AccessLevel::granted
                                                                           : AccessLevel::none;
}

void ServerNode::export_audit(std::ostream& out) const {
  for (const auto& e : state_.audit_log) out << to_json_line(e) << '\n';
}

}  // namespace foggate::server
