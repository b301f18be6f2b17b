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

#include "foggate/session.hpp"

namespace foggate::session {

namespace {

class Budget {
public:
  explicit Budget(Millis total) : deadline_(std::chrono::steady_clock::now() + total) {}
  Millis left() const {
    auto d = std::chrono::duration_cast<Millis>(deadline_ - std::chrono::steady_clock::now());
    return d.count() < 0 ? Millis{0} : d;
  }
  bool expired() const { return left().count() == 0; }

private:
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

// Wall-clock budgets bound the loop for sockets; on the simulated network the
// transport itself enforces virtual timeouts, so both terminate.
HandshakeOutcome run_client_handshake(client::ClientNode& node, transport::Transport& link,
                                      Millis timeout) {
  HandshakeOutcome out;
  Budget budget(timeout);
  while (node.phase() == client::Phase::idle) {
    auto frame = link.receive(budget.left());
    if (!frame) {
      out.phase = node.phase();
      out.detail = "no hello from server";
      return out;
    }
    node.on_hello(*frame);
  }
  out.hello_accepted = true;

  link.send(node.request_access());
  for (;;) {
    auto frame = link.receive(budget.left());
    if (!frame) {
      out.detail = link.is_open() ? "no response" : "connection closed";
      break;
    }
    if (node.on_response(*frame)) break;
    if (budget.expired()) {
      out.detail = "no response";
      break;
    }
  }
  out.phase = node.phase();
  if (out.phase == client::Phase::granted || out.phase == client::Phase::denied)
    out.detail = to_string(node.last_response_payload());
  return out;
}

bool send_data(client::ClientNode& node, transport::Transport& link, ByteView payload, Millis timeout) {
  Budget budget(timeout);
  link.send(node.send_data(payload));
  for (;;) {
    auto frame = link.receive(budget.left());
    if (!frame) return false;
    if (node.on_data_ack(*frame)) return true;
    if (budget.expired()) return false;
  }
}

void serve_connection(server::ServerNode& node, std::mutex& mu, transport::Transport& link,
                      const std::atomic<bool>& stop, Millis poll) {
  {
    std::lock_guard lock(mu);
    link.send(node.make_hello());
  }
  while (!stop.load() && link.is_open()) {
    auto frame = link.receive(poll);
    if (!frame) continue;
    std::optional<Bytes> response;
    {
      std::lock_guard lock(mu);
      response = node.handle_packet(*frame).response;
    }
    if (response) link.send(*response);
  }
}

void attach_server(simnet::Network& net, const std::string& address, server::ServerNode& node) {
  net.set_handler(address, [&net, &node, address](const simnet::Frame& f) {
    auto result = node.handle_packet(f.bytes);
    if (result.response) net.send(address, f.from, std::move(*result.response));
  });
}

}  // namespace foggate::session
