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

#include "foggate/simnet.hpp"

#include <iomanip>
#include <sstream>

#include "foggate/errors.hpp"

namespace foggate::simnet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Pending {
  Frame frame;
  bool adversarial = false;  // generated or replayed by a hook; bypasses hooks
};

}  // namespace

std::string describe(const HookMode& mode) {
  return std::visit(
      overloaded{
          [](const Passthrough&) { return std::string("passthrough"); },
          [](const Eavesdrop&) { return std::string("eavesdrop"); },
          [](const Tamper& t) {
            return "tamper(positions=" + std::to_string(t.rule.positions.size()) +
                   ",random=" + std::to_string(t.rule.random_positions) + ")";
          },
          [](const Drop& d) {
            std::ostringstream s;
            s << "drop(" << d.rate << ")";
            return s.str();
          },
          [](const Replay& r) { return "replay(" + std::to_string(r.count) + ")"; },
          [](const Inject& i) { return "inject(" + std::to_string(i.frames.size()) + ")"; },
          [](const Flood& f) {
            return "flood(" + std::to_string(f.rate) + "x" + std::to_string(f.duration_steps) + ")";
          },
      },
      mode);
}

Network::Network(std::uint64_t seed, Millis tick) : rng_(seed), tick_(tick) {}

void Network::add_endpoint(const std::string& address) {
  if (!endpoints_.emplace(address, Endpoint{}).second)
    throw InvalidArgument("duplicate endpoint " + address);
}

LinkId Network::connect(const std::string& a, const std::string& b, std::optional<AdversaryHook> hook) {
  if (!has_endpoint(a)) throw NetworkError("unknown endpoint " + a);
  if (!has_endpoint(b)) throw NetworkError("unknown endpoint " + b);
  if (a == b) throw InvalidArgument("cannot link an endpoint to itself");
  for (const auto& l : links_)
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a))
      throw InvalidArgument("duplicate link " + a + " <-> " + b);
  Link link{a, b, {}, {}, {}};
  if (hook) link.hooks.push_back(std::move(*hook));
  links_.push_back(std::move(link));
  return links_.size() - 1;
}

void Network::attach(LinkId link, AdversaryHook hook) { links_.at(link).hooks.push_back(std::move(hook)); }

Network::Link& Network::link_between(const std::string& x, const std::string& y, LinkId* id) {
  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto& l = links_[i];
    if ((l.a == x && l.b == y) || (l.a == y && l.b == x)) {
      if (id) *id = i;
      return l;
    }
  }
  throw NetworkError("no link between " + x + " and " + y);
}

void Network::send(const std::string& from, const std::string& to, Bytes frame) {
  if (!has_endpoint(from)) throw NetworkError("unknown endpoint " + from);
  if (!has_endpoint(to)) throw NetworkError("unknown endpoint " + to);
  link_between(from, to).queue.push_back(Frame{from, to, std::move(frame)});
}

bool Network::applies(const AdversaryHook& h, const Link& l, const Frame& f) {
  switch (h.direction) {
    case Direction::both: return true;
    case Direction::a_to_b: return f.from == l.a;
    case Direction::b_to_a: return f.from == l.b;
  }
  return false;
}

void Network::log(std::string line) {
  trace_.push_back("step=" + std::to_string(steps_) + " " + std::move(line));
}

void Network::generate_adversary_frames(LinkId id, Link& link) {
  auto targets = [&](Direction d) {
    std::vector<std::pair<std::string, std::string>> out;  // (apparent source, destination)
    if (d != Direction::b_to_a) out.emplace_back(link.a, link.b);
    if (d != Direction::a_to_b) out.emplace_back(link.b, link.a);
    return out;
  };
  for (auto& h : link.hooks) {
    if (auto* inj = std::get_if<Inject>(&h.mode); inj && !h.injected) {
      h.injected = true;
      auto dests = targets(h.direction == Direction::both ? Direction::a_to_b : h.direction);
      for (const auto& [src, dst] : dests)
        for (const auto& f : inj->frames) {
          link.scheduled.emplace_back(steps_, Frame{src, dst, f});
          log("link=" + std::to_string(id) + " inject " + src + "->" + dst +
              " len=" + std::to_string(f.size()));
        }
    } else if (auto* fl = std::get_if<Flood>(&h.mode); fl && h.steps_active < fl->duration_steps) {
      ++h.steps_active;
      const std::size_t span = fl->max_len >= fl->min_len ? fl->max_len - fl->min_len + 1 : 1;
      for (const auto& [src, dst] : targets(h.direction)) {
        for (unsigned i = 0; i < fl->rate; ++i) {
          Bytes junk(fl->min_len + rng_() % span);
          for (auto& c : junk) c = static_cast<std::uint8_t>(rng_());
          link.scheduled.emplace_back(steps_, Frame{src, dst, std::move(junk)});
        }
        log("link=" + std::to_string(id) + " flood " + src + "->" + dst + " count=" +
            std::to_string(fl->rate));
      }
    }
  }
}

bool Network::run_hooks(LinkId id, Link& link, Frame& frame) {
  const std::string where = "link=" + std::to_string(id) + " " + frame.from + "->" + frame.to;
  for (auto& h : link.hooks) {
    if (!applies(h, link, frame)) continue;
    ++h.frames_seen;
    bool keep = std::visit(
        overloaded{
            [&](const Passthrough&) { return true; },
            [&](const Eavesdrop&) {
              h.capture_log.push_back(frame);
              log(where + " capture len=" + std::to_string(frame.bytes.size()));
              return true;
            },
            [&](const Tamper& t) {
              if (h.frames_seen <= t.rule.skip_frames) return true;
              const std::size_t eligible = h.frames_seen - t.rule.skip_frames - 1;
              if (t.rule.every_nth == 0 || eligible % t.rule.every_nth != 0) return true;
              if (frame.bytes.empty()) return true;
              std::vector<std::size_t> hits;
              for (auto p : t.rule.positions)
                if (p < frame.bytes.size()) hits.push_back(p);
              if (!t.rule.cycle_positions.empty()) {
                auto p = t.rule.cycle_positions[h.frames_hit % t.rule.cycle_positions.size()];
                if (p < frame.bytes.size()) hits.push_back(p);
              }
              ++h.frames_hit;
              for (std::size_t i = 0; i < t.rule.random_positions; ++i)
                hits.push_back(rng_() % frame.bytes.size());
              std::string where_hit;
              for (auto p : hits) {
                frame.bytes[p] ^= t.rule.xor_mask;
                where_hit += " " + std::to_string(p);
              }
              log(where + " tamper at" + where_hit);
              return true;
            },
            [&](const Drop& d) {
              const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
              if (u < d.rate) {
                log(where + " drop len=" + std::to_string(frame.bytes.size()));
                return false;
              }
              return true;
            },
            [&](const Replay& r) {
              for (unsigned k = 1; k <= r.count; ++k) link.scheduled.emplace_back(steps_ + k, frame);
              log(where + " replay x" + std::to_string(r.count));
              return true;
            },
            [&](const Inject&) { return true; },
            [&](const Flood&) { return true; },
        },
        h.mode);
    if (!keep) return false;
  }
  return true;
}

void Network::deliver(Frame frame) {
  auto& ep = endpoints_.at(frame.to);
  log("deliver " + frame.from + "->" + frame.to + " len=" + std::to_string(frame.bytes.size()));
  if (ep.handler)
    ep.handler(frame);
  else
    ep.inbox.push_back(std::move(frame));
}

std::size_t Network::step() {
  ++steps_;
  std::vector<std::deque<Pending>> round(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    auto& link = links_[i];
    for (auto& f : link.queue) round[i].push_back({std::move(f), false});
    link.queue.clear();
    generate_adversary_frames(i, link);
    std::deque<std::pair<std::uint64_t, Frame>> later;
    for (auto& [due, f] : link.scheduled) {
      if (due <= steps_)
        round[i].push_back({std::move(f), true});
      else
        later.emplace_back(due, std::move(f));
    }
    link.scheduled = std::move(later);
  }

  std::size_t delivered = 0;
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < round.size(); ++i)
    if (!round[i].empty()) live.push_back(i);
  while (!live.empty()) {
    const std::size_t pick = rng_() % live.size();
    const std::size_t id = live[pick];
    Pending p = std::move(round[id].front());
    round[id].pop_front();
    if (round[id].empty()) live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
    if (p.adversarial || run_hooks(id, links_[id], p.frame)) {
      deliver(std::move(p.frame));
      ++delivered;
    }
  }
  now_ += tick_;
  return delivered;
}

std::optional<Frame> Network::receive(const std::string& address) {
  auto it = endpoints_.find(address);
  if (it == endpoints_.end()) throw NetworkError("unknown endpoint " + address);
  if (it->second.inbox.empty()) return std::nullopt;
  Frame f = std::move(it->second.inbox.front());
  it->second.inbox.pop_front();
  return f;
}

std::size_t Network::inbox_size(const std::string& address) const {
  auto it = endpoints_.find(address);
  if (it == endpoints_.end()) throw NetworkError("unknown endpoint " + address);
  return it->second.inbox.size();
}

void Network::set_handler(const std::string& address, std::function<void(const Frame&)> handler) {
  auto it = endpoints_.find(address);
  if (it == endpoints_.end()) throw NetworkError("unknown endpoint " + address);
  it->second.handler = std::move(handler);
}

std::size_t Network::in_flight() const {
  std::size_t n = 0;
  for (const auto& l : links_) n += l.queue.size() + l.scheduled.size();
  return n;
}

const AdversaryHook& Network::hook(LinkId link, std::size_t index) const {
  return links_.at(link).hooks.at(index);
}

std::size_t Network::hook_count(LinkId link) const { return links_.at(link).hooks.size(); }

void write_hexdump(std::ostream& out, const std::vector<Frame>& frames) {
  std::ios_base::fmtflags flags(out.flags());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    out << "# frame " << i << ' ' << f.from << " -> " << f.to << " len=" << f.bytes.size() << '\n';
    for (std::size_t row = 0; row < f.bytes.size(); row += 16) {
      out << std::hex << std::setw(8) << std::setfill('0') << row << ' ';
      std::string ascii;
      for (std::size_t k = row; k < row + 16; ++k) {
        if (k < f.bytes.size()) {
          out << ' ' << std::setw(2) << static_cast<unsigned>(f.bytes[k]);
          ascii.push_back(f.bytes[k] >= 0x20 && f.bytes[k] < 0x7f ? static_cast<char>(f.bytes[k]) : '.');
        } else {
          out << "   ";
        }
      }
      out << std::dec << "  |" << ascii << "|\n";
    }
  }
  out.flags(flags);
}

}  // namespace foggate::simnet
