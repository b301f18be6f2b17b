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
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "foggate/bytes.hpp"
#include "foggate/simnet.hpp"

namespace foggate::transport {

using Millis = std::chrono::milliseconds;

inline constexpr std::size_t kMaxFrameSize = 16u << 20;

/// Message-oriented channel to one peer. receive() returns nullopt on
/// timeout or when the peer has gone away; is_open() tells which.
class Transport {
public:
  virtual ~Transport() = default;
  virtual void send(ByteView frame) = 0;
  virtual std::optional<Bytes> receive(Millis timeout) = 0;
  virtual bool is_open() const = 0;
};

struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};

/// Parses "HOST:PORT"; throws ConfigError.
HostPort parse_address(const std::string& address);

/// Stream socket carrying [len:4 big-endian][bytes] frames. One reader and
/// one writer may use a connection concurrently.
class TcpTransport : public Transport {
public:
  explicit TcpTransport(int fd);
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  /// Throws NetworkError naming the address on failure.
  static std::unique_ptr<TcpTransport> connect(const std::string& address,
                                               Millis timeout = Millis{5000});

  void send(ByteView frame) override;
  std::optional<Bytes> receive(Millis timeout) override;
  bool is_open() const override { return open_; }
  void close();

private:
  bool read_exact(std::uint8_t* dst, std::size_t n, Millis timeout);

  int fd_;
  std::atomic<bool> open_{true};
  std::mutex write_mu_;
};

class TcpListener {
public:
  /// Port 0 picks an ephemeral port. Throws NetworkError with the address.
  static TcpListener listen(const std::string& address);

  TcpListener(TcpListener&& o) noexcept;
  TcpListener& operator=(TcpListener&&) = delete;
  ~TcpListener();

  /// nullptr on timeout.
  std::unique_ptr<TcpTransport> accept(Millis timeout);
  std::uint16_t port() const { return port_; }

private:
  TcpListener(int fd, std::uint16_t port) : fd_(fd), port_(port) {}
  int fd_;
  std::uint16_t port_;
};

/// Adapter presenting one side of a simnet link as a Transport. receive()
/// steps the network until a frame arrives or `timeout` of virtual time has
/// passed.
class SimTransport : public Transport {
public:
  SimTransport(simnet::Network& net, std::string self, std::string peer)
      : net_(net), self_(std::move(self)), peer_(std::move(peer)) {}

  void send(ByteView frame) override;
  std::optional<Bytes> receive(Millis timeout) override;
  bool is_open() const override { return true; }

private:
  simnet::Network& net_;
  std::string self_;
  std::string peer_;
};

}  // namespace foggate::transport
