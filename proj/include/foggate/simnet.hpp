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
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "foggate/bytes.hpp"

namespace foggate::simnet {

using Millis = std::chrono::milliseconds;

struct Frame {
  std::string from;
  std::string to;
  Bytes bytes;

  bool operator==(const Frame&) const = default;
};

/// Byte positions to corrupt, as offsets ignored past the end of a frame.
/// Every hit frame gets all of `positions`; the k-th hit frame additionally
/// gets cycle_positions[k % size]; `random_positions` more offsets are drawn
/// from the network seed. The first `skip_frames` frames the hook sees pass
/// untouched, after which every `every_nth` frame is hit.
struct TamperRule {
  std::vector<std::size_t> positions;
  std::vector<std::size_t> cycle_positions;
  std::size_t random_positions = 0;
  std::uint8_t xor_mask = 0xFF;
  std::size_t every_nth = 1;
  std::size_t skip_frames = 0;
};

struct Passthrough {};
struct Eavesdrop {};
struct Tamper {
  TamperRule rule;
};
struct Drop {
  double rate = 1.0;
};
struct Replay {
  unsigned count = 1;  // extra copies, one per following step
};
struct Inject {
  std::vector<Bytes> frames;  // delivered on the first step after attach
};
struct Flood {
  unsigned rate = 64;            // junk frames per step
  unsigned duration_steps = 10;
  std::size_t min_len = 1;
  std::size_t max_len = 512;
};

using HookMode = std::variant<Passthrough, Eavesdrop, Tamper, Drop, Replay, Inject, Flood>;

/// Which traffic a hook sees, relative to the (a, b) order given to connect.
enum class Direction { both, a_to_b, b_to_a };

struct AdversaryHook {
  HookMode mode = Passthrough{};
  Direction direction = Direction::both;
  std::vector<Frame> capture_log;  // frames copied by eavesdrop hooks

  // bookkeeping, advanced by the network
  std::size_t frames_seen = 0;
  std::size_t frames_hit = 0;
  unsigned steps_active = 0;
  bool injected = false;
};

std::string describe(const HookMode& mode);

using LinkId = std::size_t;

/// Step-driven in-process network. Frames sent between steps are queued per
/// link; step() delivers them through the link's hooks in a seeded
/// interleaving that keeps per-link order, then advances the virtual clock by
/// one tick. All randomness comes from the seed, so a run is reproducible.
class Network {
public:
  explicit Network(std::uint64_t seed, Millis tick = Millis{1000});

  /// Throws InvalidArgument for a duplicate address.
  void add_endpoint(const std::string& address);
  bool has_endpoint(const std::string& address) const { return endpoints_.contains(address); }

  /// Throws NetworkError for unknown endpoints, InvalidArgument for a
  /// duplicate link.
  LinkId connect(const std::string& a, const std::string& b,
                 std::optional<AdversaryHook> hook = std::nullopt);
  void attach(LinkId link, AdversaryHook hook);

  /// Throws NetworkError if either endpoint is unknown or not linked.
  void send(const std::string& from, const std::string& to, Bytes frame);

  /// Delivers one round; returns the number of frames delivered.
  std::size_t step();

  std::optional<Frame> receive(const std::string& address);
  std::size_t inbox_size(const std::string& address) const;

  /// Frames for a handled endpoint bypass its inbox and go to the handler
  /// at delivery time.
  void set_handler(const std::string& address, std::function<void(const Frame&)> handler);

  Millis now() const { return now_; }
  std::uint64_t steps() const { return steps_; }
  std::size_t in_flight() const;

  const AdversaryHook& hook(LinkId link, std::size_t index = 0) const;
  std::size_t hook_count(LinkId link) const;

  /// One line per delivery and adversary action; identical for identical
  /// seeds and inputs.
  const std::vector<std::string>& trace() const { return trace_; }

private:
  struct Link {
    std::string a;
    std::string b;
    std::vector<AdversaryHook> hooks;
    std::deque<Frame> queue;
    std::deque<std::pair<std::uint64_t, Frame>> scheduled;  // (due step, frame)
  };
  struct Endpoint {
    std::deque<Frame> inbox;
    std::function<void(const Frame&)> handler;
  };

  Link& link_between(const std::string& x, const std::string& y, LinkId* id = nullptr);
  static bool applies(const AdversaryHook& h, const Link& l, const Frame& f);
  void generate_adversary_frames(LinkId id, Link& link);
  bool run_hooks(LinkId id, Link& link, Frame& frame);
  void deliver(Frame frame);
  void log(std::string line);

  std::mt19937_64 rng_;
  Millis tick_;
  Millis now_{0};
  std::uint64_t steps_ = 0;
  std::map<std::string, Endpoint> endpoints_;
  std::vector<Link> links_;
  std::vector<std::string> trace_;
};

/// Offline-analysis dump: a header line per frame and 16 bytes per row.
void write_hexdump(std::ostream& out, const std::vector<Frame>& frames);

}  // namespace foggate::simnet
