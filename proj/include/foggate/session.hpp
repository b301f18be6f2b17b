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

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>

#include "foggate/client.hpp"
#include "foggate/server.hpp"
#include "foggate/simnet.hpp"
#include "foggate/transport.hpp"

// Drivers that run the node state machines over any Transport, so the same
// handshake code path is used on loopback sockets and on the simulated network.
namespace foggate::session {

using Millis = std::chrono::milliseconds;

struct HandshakeOutcome {
  bool hello_accepted = false;
  client::Phase phase = client::Phase::idle;
  std::string detail;
};

/// Waits for a hello (unless already discovered), requests access and waits
/// for an accepted response. Stops after `timeout` without one.
HandshakeOutcome run_client_handshake(client::ClientNode& node, transport::Transport& link,
                                      Millis timeout);

/// Sends DATA and waits for the matching acknowledgement.
bool send_data(client::ClientNode& node, transport::Transport& link, ByteView payload, Millis timeout);

/// Sends a hello, then answers packets until the peer leaves or `stop` is
/// set. `mu` serializes access to the shared server.
void serve_connection(server::ServerNode& node, std::mutex& mu, transport::Transport& link,
                      const std::atomic<bool>& stop, Millis poll = Millis{200});

/// Makes `address` a reactive server endpoint on the simulated network: each
/// delivered frame is handled at once and any response is sent back.
void attach_server(simnet::Network& net, const std::string& address, server::ServerNode& node);

}  // namespace foggate::session
