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

#include "foggate/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "foggate/errors.hpp"

namespace foggate::transport {

namespace {

std::string sys_error(const std::string& what, const std::string& address) {
  return what + " " + address + ": " + std::strerror(errno);
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

AddrInfo resolve(const HostPort& hp, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  AddrInfo info;
  auto port = std::to_string(hp.port);
  int rc = getaddrinfo(hp.host.empty() ? nullptr : hp.host.c_str(), port.c_str(), &hints, &info.head);
  if (rc != 0)
    throw NetworkError("cannot resolve " + hp.host + ":" + port + ": " + gai_strerror(rc));
  return info;
}

int remaining_ms(std::chrono::steady_clock::time_point deadline) {
  auto left = std::chrono::duration_cast<Millis>(deadline - std::chrono::steady_clock::now()).count();
  return left < 0 ? 0 : static_cast<int>(left);
}

}  // namespace

HostPort parse_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size())
    throw ConfigError("address must be HOST:PORT, got '" + address + "'");
  HostPort hp;
  hp.host = address.substr(0, colon);
  if (hp.host.size() >= 2 && hp.host.front() == '[' && hp.host.back() == ']')
    hp.host = hp.host.substr(1, hp.host.size() - 2);
  try {
    std::size_t used = 0;
    auto port = std::stoul(address.substr(colon + 1), &used);
    if (used != address.size() - colon - 1 || port > 65535) throw std::out_of_range("port");
    hp.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    throw ConfigError("invalid port in address '" + address + "'");
  }
  return hp;
}

TcpTransport::TcpTransport(int fd) : fd_(fd) {
  int one = 1;
  setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpTransport::~TcpTransport() { close(); }

void TcpTransport::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
  open_ = false;
}

std::unique_ptr<TcpTransport> TcpTransport::connect(const std::string& address, Millis timeout) {
  auto hp = parse_address(address);
  auto info = resolve(hp, false);
  std::string last = "no addresses";
  for (auto* ai = info.head; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) {
      last = std::strerror(errno);
      continue;
    }
    int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
    if (rc != 0 && errno == EINPROGRESS) {
      pollfd p{fd, POLLOUT, 0};
      int ready = ::poll(&p, 1, static_cast<int>(timeout.count()));
      if (ready == 1) {
        int err = 0;
        socklen_t len = sizeof err;
        getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len);
        rc = err == 0 ? 0 : -1;
        errno = err;
      } else {
        if (ready == 0) errno = ETIMEDOUT;
        rc = -1;
      }
    }
    if (rc == 0) {
      fcntl(fd, F_SETFL, flags);
      return std::make_unique<TcpTransport>(fd);
    }
    last = std::strerror(errno);
    ::close(fd);
  }
  throw NetworkError("connect " + address + ": " + last);
}

void TcpTransport::send(ByteView frame) {
  if (frame.size() > kMaxFrameSize) throw InvalidArgument("frame too large");
  std::lock_guard lock(write_mu_);
  if (fd_ < 0) throw NetworkError("send on closed connection");
  ByteWriter w(4 + frame.size());
  w.u32(static_cast<std::uint32_t>(frame.size())).raw(frame);
  const auto& buf = w.bytes();
  std::size_t sent = 0;
  while (sent < buf.size()) {
    auto n = ::send(fd_, buf.data() + sent, buf.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      open_ = false;
      throw NetworkError(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool TcpTransport::read_exact(std::uint8_t* dst, std::size_t n, Millis timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::size_t got = 0;
  while (got < n) {
    pollfd p{fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, remaining_ms(deadline));
    if (rc < 0 && errno == EINTR) continue;
    if (rc <= 0) return false;
    auto r = ::recv(fd_, dst + got, n - got, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) {
      open_ = false;
      return false;
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

std::optional<Bytes> TcpTransport::receive(Millis timeout) {
  if (fd_ < 0 || !open_) return std::nullopt;
  std::uint8_t header[4];
  if (!read_exact(header, 4, timeout)) return std::nullopt;
  ByteReader r(header);
  auto len = r.u32();
  if (len > kMaxFrameSize) {
    close();
    throw NetworkError("peer sent oversized frame");
  }
  Bytes frame(len);
  // A header without its body within the timeout is treated as a dead peer.
  if (len > 0 && !read_exact(frame.data(), len, timeout)) {
    open_ = false;
    return std::nullopt;
  }
  return frame;
}

TcpListener TcpListener::listen(const std::string& address) {
  auto hp = parse_address(address);
  auto info = resolve(hp, true);
  std::string last = "no addresses";
  for (auto* ai = info.head; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) {
      last = std::strerror(errno);
      continue;
    }
    int one = 1;
    setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) != 0 || ::listen(fd, 16) != 0) {
      last = std::strerror(errno);
      ::close(fd);
      continue;
    }
    sockaddr_storage ss{};
    socklen_t len = sizeof ss;
    getsockname(fd, reinterpret_cast<sockaddr*>(&ss), &len);
    std::uint16_t port = ss.ss_family == AF_INET6
                             ? ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port)
                             : ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
    return TcpListener(fd, port);
  }
  throw NetworkError("listen " + address + ": " + last);
}

TcpListener::TcpListener(TcpListener&& o) noexcept : fd_(o.fd_), port_(o.port_) { o.fd_ = -1; }

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpTransport> TcpListener::accept(Millis timeout) {
  pollfd p{fd_, POLLIN, 0};
  int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
  if (rc <= 0) return nullptr;
  int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
  if (fd < 0) throw NetworkError(sys_error("accept on port", std::to_string(port_)));
  return std::make_unique<TcpTransport>(fd);
}

void SimTransport::send(ByteView frame) { net_.send(self_, peer_, Bytes(frame.begin(), frame.end())); }

std::optional<Bytes> SimTransport::receive(Millis timeout) {
  const auto deadline = net_.now() + timeout;
  for (;;) {
    if (auto f = net_.receive(self_)) return std::move(f->bytes);
    if (net_.now() >= deadline) return std::nullopt;
    net_.step();
  }
}

}  // namespace foggate::transport
