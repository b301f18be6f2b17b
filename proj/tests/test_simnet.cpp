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

#include <gtest/gtest.h>

#include <sstream>

#include "foggate/errors.hpp"
#include "foggate/simnet.hpp"

using namespace foggate;
using namespace foggate::simnet;

namespace {

Network pair_net(std::uint64_t seed, std::optional<AdversaryHook> hook = std::nullopt) {
  Network net(seed, Millis{100});
  net.add_endpoint("a");
  net.add_endpoint("b");
  net.connect("a", "b", std::move(hook));
  return net;
}

std::vector<Bytes> drain(Network& net, const std::string& who) {
  std::vector<Bytes> out;
  while (auto f = net.receive(who)) out.push_back(f->bytes);
  return out;
}

AdversaryHook hook(HookMode m, Direction d = Direction::both) {
  AdversaryHook h;
  h.mode = std::move(m);
  h.direction = d;
  return h;
}

}  // namespace

TEST(Simnet, DeliversInOrderAndAdvancesClock) {
  auto net = pair_net(1);
  for (std::uint8_t i = 0; i < 5; ++i) net.send("a", "b", Bytes{i});
  EXPECT_EQ(net.in_flight(), 5u);
  EXPECT_EQ(net.inbox_size("b"), 0u);
  EXPECT_EQ(net.step(), 5u);
  EXPECT_EQ(net.now(), Millis{100});
  EXPECT_EQ(net.steps(), 1u);
  auto got = drain(net, "b");
  ASSERT_EQ(got.size(), 5u);
  for (std::uint8_t i = 0; i < 5; ++i) EXPECT_EQ(got[i], Bytes{i});
  EXPECT_TRUE(drain(net, "a").empty());
}

TEST(Simnet, ErrorsForUnknownOrUnlinkedEndpoints) {
  Network net(1);
  net.add_endpoint("a");
  net.add_endpoint("b");
  net.add_endpoint("c");
  EXPECT_THROW(net.add_endpoint("a"), InvalidArgument);
  EXPECT_THROW(net.connect("a", "zz"), NetworkError);
  EXPECT_THROW(net.connect("a", "a"), InvalidArgument);
  net.connect("a", "b");
  EXPECT_THROW(net.connect("b", "a"), InvalidArgument);
  EXPECT_THROW(net.send("a", "c", Bytes{1}), NetworkError);
  EXPECT_THROW(net.send("a", "zz", Bytes{1}), NetworkError);
  EXPECT_THROW(net.receive("zz"), NetworkError);
  EXPECT_THROW(net.inbox_size("zz"), NetworkError);
}

TEST(Simnet, EavesdropCopiesWithoutChanging) {
  auto net = pair_net(2, hook(Eavesdrop{}));
  net.send("a", "b", Bytes{1, 2});
  net.send("b", "a", Bytes{3});
  net.step();
  EXPECT_EQ(net.hook(0).capture_log.size(), 2u);
  EXPECT_EQ(drain(net, "b"), std::vector<Bytes>{Bytes({1, 2})});
  EXPECT_EQ(drain(net, "a"), std::vector<Bytes>{Bytes{3}});
}

TEST(Simnet, DirectionFiltersHooks) {
  auto net = pair_net(2, hook(Eavesdrop{}, Direction::b_to_a));
  net.send("a", "b", Bytes{1});
  net.send("b", "a", Bytes{2});
  net.step();
  ASSERT_EQ(net.hook(0).capture_log.size(), 1u);
  EXPECT_EQ(net.hook(0).capture_log[0].from, "b");
}

TEST(Simnet, TamperFixedCycleAndSkip) {
  TamperRule rule;
  rule.positions = {0};
  rule.cycle_positions = {1, 2};
  rule.skip_frames = 1;
  rule.xor_mask = 0x0F;
  auto net = pair_net(3, hook(Tamper{rule}, Direction::a_to_b));
  for (int i = 0; i < 4; ++i) net.send("a", "b", Bytes{0, 0, 0});
  net.step();
  auto got = drain(net, "b");
  ASSERT_EQ(got.size(), 4u);
  EXPECT_EQ(got[0], Bytes({0, 0, 0}));
  EXPECT_EQ(got[1], Bytes({0x0F, 0x0F, 0}));
  EXPECT_EQ(got[2], Bytes({0x0F, 0, 0x0F}));
  EXPECT_EQ(got[3], Bytes({0x0F, 0x0F, 0}));
  EXPECT_EQ(net.hook(0).frames_seen, 4u);
  EXPECT_EQ(net.hook(0).frames_hit, 3u);
}

TEST(Simnet, TamperEveryNthAndOutOfRange) {
  TamperRule rule;
  rule.positions = {1, 50};
  rule.every_nth = 2;
  auto net = pair_net(3, hook(Tamper{rule}));
  for (int i = 0; i < 4; ++i) net.send("a", "b", Bytes{0, 0});
  net.step();
  auto got = drain(net, "b");
  EXPECT_EQ(got[0], Bytes({0, 0xFF}));
  EXPECT_EQ(got[1], Bytes({0, 0}));
  EXPECT_EQ(got[2], Bytes({0, 0xFF}));
  EXPECT_EQ(got[3], Bytes({0, 0}));
}

TEST(Simnet, DropAllAndNone) {
  auto all = pair_net(4, hook(Drop{1.0}));
  all.send("a", "b", Bytes{1});
  EXPECT_EQ(all.step(), 0u);
  EXPECT_EQ(all.inbox_size("b"), 0u);
  auto none = pair_net(4, hook(Drop{0.0}));
  none.send("a", "b", Bytes{1});
  EXPECT_EQ(none.step(), 1u);
}

TEST(Simnet, ReplayDeliversLaterCopies) {
  auto net = pair_net(5, hook(Replay{2}));
  net.send("a", "b", Bytes{9});
  net.step();
  EXPECT_EQ(net.inbox_size("b"), 1u);
  net.step();
  net.step();
  EXPECT_EQ(drain(net, "b"), (std::vector<Bytes>{Bytes{9}, Bytes{9}, Bytes{9}}));
  net.step();
  EXPECT_EQ(net.inbox_size("b"), 0u);
}

TEST(Simnet, InjectOnceAndFloodForDuration) {
  auto net = pair_net(6, hook(Inject{{Bytes{7}, Bytes{8}}}, Direction::a_to_b));
  net.step();
  net.step();
  EXPECT_EQ(drain(net, "b"), (std::vector<Bytes>{Bytes{7}, Bytes{8}}));

  Flood f;
  f.rate = 10;
  f.duration_steps = 3;
  f.min_len = 4;
  f.max_len = 8;
  auto flood = pair_net(6, hook(f, Direction::a_to_b));
  for (int i = 0; i < 5; ++i) flood.step();
  auto junk = drain(flood, "b");
  EXPECT_EQ(junk.size(), 30u);
  for (const auto& j : junk) {
    EXPECT_GE(j.size(), 4u);
    EXPECT_LE(j.size(), 8u);
  }
  EXPECT_EQ(flood.inbox_size("a"), 0u);
}

TEST(Simnet, HandlerReceivesInsteadOfInbox) {
  auto net = pair_net(7);
  std::vector<Frame> seen;
  net.set_handler("b", [&](const Frame& f) { seen.push_back(f); });
  net.send("a", "b", Bytes{1});
  net.step();
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].from, "a");
  EXPECT_EQ(net.inbox_size("b"), 0u);
}

TEST(Simnet, SameSeedSameTrace) {
  auto run = [](std::uint64_t seed) {
    Network net(seed);
    for (auto n : {"a", "b", "c"}) net.add_endpoint(n);
    TamperRule rule;
    rule.random_positions = 2;
    net.connect("a", "b", hook(Tamper{rule}));
    net.connect("a", "c", hook(Drop{0.5}));
    for (int s = 0; s < 10; ++s) {
      for (std::uint8_t i = 0; i < 4; ++i) {
        net.send("a", "b", Bytes(8, i));
        net.send("c", "a", Bytes(5, i));
      }
      net.step();
    }
    return std::make_pair(net.trace(), drain(net, "b"));
  };
  EXPECT_EQ(run(11), run(11));
  EXPECT_NE(run(11).first, run(12).first);
}

TEST(Simnet, DescribeModes) {
  EXPECT_EQ(describe(Replay{3}), "replay(3)");
  EXPECT_EQ(describe(Flood{5, 2}), "flood(5x2)");
  EXPECT_EQ(describe(Inject{{Bytes{1}}}), "inject(1)");
}

TEST(Simnet, HexdumpFormat) {
  std::ostringstream out;
  Bytes b;
  for (int i = 0; i < 18; ++i) b.push_back(static_cast<std::uint8_t>(0x41 + i));
  write_hexdump(out, {Frame{"a", "b", b}});
  EXPECT_EQ(out.str(),
            "# frame 0 a -> b len=18\n"
            "00000000  41 42 43 44 45 46 47 48 49 4a 4b 4c 4d 4e 4f 50  |ABCDEFGHIJKLMNOP|\n"
            "00000010  51 52" + std::string(14 * 3, ' ') + "  |QR|\n");
}
