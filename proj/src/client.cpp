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

#include "foggate/client.hpp"

#include <algorithm>

#include "foggate/errors.hpp"

namespace foggate::client {

using packet::MessageType;

const char* to_string(Phase p) {
  switch (p) {
    case Phase::idle: return "idle";
    case Phase::discovered: return "discovered";
    case Phase::requested: return "requested";
    case Phase::granted: return "granted";
    case Phase::denied: return "denied";
  }
  return "unknown";
}

const char* to_string(NoteKind k) {
  switch (k) {
    case NoteKind::hello_accepted: return "hello-accepted";
    case NoteKind::hello_rejected: return "hello-rejected";
    case NoteKind::response_accepted: return "response-accepted";
    case NoteKind::response_discarded: return "response-discarded";
    case NoteKind::ack_accepted: return "ack-accepted";
    case NoteKind::ack_discarded: return "ack-discarded";
    case NoteKind::timeout: return "timeout";
  }
  return "unknown";
}

ClientNode::ClientNode(DeviceIdentity identity, crypto::PublicKey server_public, ClientConfig config)
    : identity_(std::move(identity)),
      server_public_(std::move(server_public)),
      config_(std::move(config)),
      server_serial_(config_.server_serial_id) {
  if (identity_.serial_id.empty()) throw InvalidIdentity("client serial ID must not be empty");
  if (server_serial_) phase_ = Phase::discovered;
}

void ClientNode::note(NoteKind kind, ByteView wire, std::string detail) {
  notes_.push_back({kind, crypto::one_way_hash(wire), std::move(detail)});
}

bool ClientNode::on_hello(ByteView wire) {
  if (phase_ != Phase::idle && phase_ != Phase::discovered) return false;
  packet::Hello hello;
  try {
    hello = packet::parse_hello(wire);
  } catch (const Error& e) {
    note(NoteKind::hello_rejected, wire, e.what());
    return false;
  }
  if (!packet::verify_hello(hello, server_public_)) {
    note(NoteKind::hello_rejected, wire, "bad signature");
    return false;
  }
  if (server_serial_ && *server_serial_ != hello.body.sender_serial_id) {
    note(NoteKind::hello_rejected, wire, "unexpected server serial");
    return false;
  }
  server_serial_ = hello.body.sender_serial_id;
  phase_ = Phase::discovered;
  note(NoteKind::hello_accepted, wire);
  return true;
}

Bytes ClientNode::request_access(Millis now) {
  if (phase_ != Phase::discovered) throw StateError("request_access requires phase discovered");
  auto msg = packet::InnerMessage::make(MessageType::access_request, identity_.serial_id);
  auto wire = packet::create_packet(msg, identity_.private_key(), server_public_);
  pending_request_ = msg.nonce_token;
  deadline_ = now + config_.response_timeout;
  phase_ = Phase::requested;
  return wire;
}

std::optional<packet::InnerMessage> ClientNode::authenticate(ByteView wire,
                                                             const packet::NonceToken& expected,
                                                             std::string& why) const {
  try {
    auto sealed = packet::open_packet(wire, identity_.private_key());
    if (sealed.sender_serial_id != *server_serial_) {
      why = "sender is not the server";
      return std::nullopt;
    }
    auto inner = packet::decrypt_inner(sealed, sealed.sender_serial_id);
    if (!packet::verify_packet_signature(sealed, inner, server_public_)) {
      why = "bad signature";
      return std::nullopt;
    }
    if (inner.payload.size() < packet::kNonceTokenSize ||
        !std::equal(expected.begin(), expected.end(), inner.payload.begin())) {
      why = "response not bound to the outstanding request";
      return std::nullopt;
    }
    return inner;
  } catch (const Error& e) {
    why = e.what();
    return std::nullopt;
  }
}

bool ClientNode::on_response(ByteView wire) {
  if (phase_ != Phase::requested || !pending_request_ || !server_serial_) return false;
  std::string why;
  auto inner = authenticate(wire, *pending_request_, why);
  if (inner && inner->msg_type != MessageType::access_grant &&
      inner->msg_type != MessageType::access_deny) {
    why = "unexpected message type";
    inner.reset();
  }
  if (!inner) {
    note(NoteKind::response_discarded, wire, why);
    return false;
  }
  last_payload_.assign(inner->payload.begin() + packet::kNonceTokenSize, inner->payload.end());
  phase_ = inner->msg_type == MessageType::access_grant ? Phase::granted : Phase::denied;
  pending_request_.reset();
  note(NoteKind::response_accepted, wire, packet::to_string(inner->msg_type));
  return true;
}

Bytes ClientNode::send_data(ByteView payload) {
  if (phase_ != Phase::granted) throw StateError("send_data requires phase granted");
  auto msg = packet::InnerMessage::make(MessageType::data, identity_.serial_id,
                                        Bytes(payload.begin(), payload.end()));
  pending_data_ = msg.nonce_token;
  return packet::create_packet(msg, identity_.private_key(), server_public_);
}

bool ClientNode::on_data_ack(ByteView wire) {
  if (phase_ != Phase::granted || !pending_data_) return false;
  std::string why;
  auto inner = authenticate(wire, *pending_data_, why);
  if (!inner || inner->msg_type != MessageType::access_grant) {
    note(NoteKind::ack_discarded, wire, inner ? packet::to_string(inner->msg_type) : why);
    return false;
  }
  last_payload_.assign(inner->payload.begin() + packet::kNonceTokenSize, inner->payload.end());
  pending_data_.reset();
  note(NoteKind::ack_accepted, wire);
  return true;
}

void ClientNode::tick(Millis now) {
  if (phase_ == Phase::requested && now >= deadline_) {
    phase_ = Phase::discovered;
    pending_request_.reset();
    notes_.push_back({NoteKind::timeout, crypto::Digest::zero(), "no response before deadline"});
  }
}

}  // namespace foggate::client
