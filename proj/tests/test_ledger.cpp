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

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "foggate/errors.hpp"
#include "foggate/ledger.hpp"
#include "oracles/lookup_oracle.hpp"
#include "oracles/sha256_ref.hpp"
#include "support/test_keys.hpp"

using namespace foggate;
using ledger::DeviceStatus;
using ledger::Ledger;
using testing_support::key;

namespace {

// Hand-written big-endian encoder following the documented block layout.
struct Enc {
  Bytes b;
  void n(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void raw(ByteView v) { b.insert(b.end(), v.begin(), v.end()); }
};

std::array<std::uint8_t, 32> oracle_block_hash(const ledger::Block& blk) {
  Enc e;
  e.n(blk.index, 8);
  e.raw(blk.prev_hash.view());
  e.n(blk.timestamp, 8);
  e.n(blk.entries.size(), 4);
  for (const auto& en : blk.entries) {
    e.n(static_cast<std::uint8_t>(en.kind), 1);
    e.raw(en.serial_id_digest.view());
    e.n(en.timestamp, 8);
    if (en.kind == ledger::EntryKind::identity) {
      e.n(en.public_key->size(), 2);
      e.raw(*en.public_key);
      e.n(static_cast<std::uint8_t>(*en.status), 1);
    } else {
      e.raw(en.tx_digest->view());
    }
  }
  return oracle::sha256(e.b);
}

Ledger sample_chain(std::size_t blocks) {
  auto l = Ledger::genesis(1000);
  for (std::size_t i = 1; i < blocks; ++i) {
    if (i % 2)
      l = l.register_device("dev-" + std::to_string(i), key(i % 4 ? "a" : "b").public_key, DeviceStatus::allowed,
                            1000 + i);
    else
      l = l.record_transaction(crypto::one_way_hash("tx" + std::to_string(i)),
                               crypto::one_way_hash(std::string_view("dev-1")), 1000 + i);
  }
  return l;
}

}  // namespace

TEST(Ledger, GenesisShape) {
  auto l = Ledger::genesis(42);
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l.tip().index, 0u);
  EXPECT_EQ(l.tip().prev_hash, crypto::Digest::zero());
  EXPECT_TRUE(l.tip().entries.empty());
  EXPECT_EQ(l.tip().block_hash.bytes, oracle_block_hash(l.tip()));
  EXPECT_TRUE(l.verify_chain().valid);
}

TEST(Ledger, BlockHashesMatchIndependentEncoding) {
  auto l = sample_chain(8);
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_EQ(l.block(i).block_hash.bytes, oracle_block_hash(l.block(i))) << "block " << i;
    if (i) EXPECT_EQ(l.block(i).prev_hash, l.block(i - 1).block_hash);
    EXPECT_EQ(l.block(i).index, i);
  }
}

TEST(Ledger, AppendIsPersistentAndRejectsEmpty) {
  auto a = Ledger::genesis(1);
  auto b = a.register_device("dev-x", key("a").public_key, DeviceStatus::allowed, 2);
  EXPECT_EQ(a.size(), 1u);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_FALSE(a.lookup("dev-x"));
  EXPECT_TRUE(b.lookup("dev-x"));
  EXPECT_THROW(a.append_block({}), InvalidArgument);
}

TEST(Ledger, TimestampsNeverGoBackwards) {
  auto l = Ledger::genesis(100).record_transaction(crypto::Digest::zero(), crypto::Digest::zero(), 50);
  EXPECT_GE(l.tip().timestamp, 100u);
}

TEST(Ledger, LookupReturnsLatestRegistration) {
  auto l = Ledger::genesis(1)
               .register_device("dev-a", key("a").public_key, DeviceStatus::allowed, 2)
               .register_device("dev-b", key("b").public_key, DeviceStatus::allowed, 3)
               .register_device("dev-a", key("a").public_key, DeviceStatus::blocked, 4);
  auto a = l.lookup("dev-a");
  ASSERT_TRUE(a);
  EXPECT_EQ(*a->status, DeviceStatus::blocked);
  EXPECT_EQ(l.lookup("dev-b")->status, DeviceStatus::allowed);
  EXPECT_EQ(*l.lookup("dev-b")->public_key, key("b").public_key.der());
  EXPECT_FALSE(l.lookup("dev-c"));
  EXPECT_TRUE(l.lookup(crypto::one_way_hash(std::string_view("dev-b"))));
}

TEST(Ledger, RegisterRejectsMalformedKey) {
  EXPECT_THROW(Ledger::genesis(1).register_device("dev", Bytes{1, 2, 3}, DeviceStatus::allowed),
               InvalidArgument);
}

TEST(Ledger, LookupAgreesWithLinearScanOracle) {
  std::mt19937_64 rng(2024);
  const Bytes ka = key("a").public_key.der(), kb = key("b").public_key.der();
  for (int seq = 0; seq < 40; ++seq) {
    auto l = Ledger::genesis(1);
    oracle::LookupOracle o;
    const int ops = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < ops; ++i) {
      std::string serial = "dev-" + std::to_string(rng() % 5);
      const bool blocked = rng() % 3 == 0;
      const Bytes& k = rng() % 2 ? ka : kb;
      if (rng() % 4 == 0)
        l = l.record_transaction(crypto::one_way_hash(serial), crypto::one_way_hash(serial));
      l = l.register_device(serial, k, blocked ? DeviceStatus::blocked : DeviceStatus::allowed);
      o.record({serial, k, blocked});
    }
    for (int s = 0; s < 6; ++s) {
      const std::string serial = "dev-" + std::to_string(s);
      auto got = l.lookup(serial);
      auto want = o.lookup(serial);
      ASSERT_EQ(got.has_value(), want.has_value()) << serial;
      if (got) {
        EXPECT_EQ(*got->public_key, want->public_key_der);
        EXPECT_EQ(*got->status == DeviceStatus::blocked, want->blocked);
      }
    }
  }
}

TEST(Ledger, VerifyChainLocatesFirstBadBlock) {
  auto blocks = sample_chain(6).blocks();
  blocks[3].timestamp += 1;  // content changed, stored hash stale
  auto report = Ledger::from_blocks(blocks).verify_chain();
  EXPECT_FALSE(report.valid);
  EXPECT_EQ(report.first_bad_index, 3u);

  blocks = sample_chain(6).blocks();
  blocks[2].block_hash = blocks[2].compute_hash();
  blocks[4].prev_hash.bytes[0] ^= 1;
  blocks[4].block_hash = blocks[4].compute_hash();  // consistent hash, broken link
  report = Ledger::from_blocks(blocks).verify_chain();
  EXPECT_EQ(report.first_bad_index, 4u);

  blocks = sample_chain(6).blocks();
  blocks.erase(blocks.begin() + 2);
  report = Ledger::from_blocks(blocks).verify_chain();
  EXPECT_EQ(report.first_bad_index, 2u);
}

TEST(Ledger, SerializedLayout) {
  auto l = sample_chain(3);
  auto image = l.serialize();
  ASSERT_GE(image.size(), 12u);
  EXPECT_EQ(std::string(image.begin(), image.begin() + 4), "FGL1");
  ByteReader r(image);
  r.raw(4);
  EXPECT_EQ(r.u64(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    auto rec = r.var32();
    auto body = l.block(i).canonical_body();
    ASSERT_EQ(rec.size(), body.size() + 32);
    EXPECT_TRUE(std::equal(body.begin(), body.end(), rec.begin()));
    EXPECT_TRUE(std::equal(rec.end() - 32, rec.end(), l.block(i).block_hash.bytes.begin()));
  }
  EXPECT_TRUE(r.done());
  EXPECT_EQ(Ledger::deserialize(image), l);
}

TEST(Ledger, DeserializeRejectsDamage) {
  auto image = sample_chain(4).serialize();
  EXPECT_THROW(Ledger::deserialize(ByteView(image).first(image.size() - 1)), LoadError);
  auto extra = image;
  extra.push_back(0);
  EXPECT_THROW(Ledger::deserialize(extra), LoadError);
  auto magic = image;
  magic[0] = 'X';
  EXPECT_THROW(Ledger::deserialize(magic), LoadError);
  auto hash = image;
  hash[hash.size() - 1] ^= 1;
  EXPECT_THROW(Ledger::deserialize(hash), IntegrityError);
  EXPECT_NO_THROW(Ledger::decode(hash));
  EXPECT_FALSE(Ledger::decode(hash).verify_chain().valid);
}

TEST(Ledger, SaveLoadRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / ("foggate-ledger-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = dir / "chain.fgl";
  auto l = sample_chain(5);
  l.save(path);
  EXPECT_EQ(Ledger::load(path), l);
  EXPECT_THROW(Ledger::load(dir / "missing.fgl"), LoadError);
  {
    std::ofstream junk(dir / "junk.fgl", std::ios::binary);
    junk << "garbage";
  }
  EXPECT_THROW(Ledger::load(dir / "junk.fgl"), LoadError);
  std::filesystem::remove_all(dir);
}

TEST(Ledger, EveryByteFlipOfSmallChainIsDetected) {
  auto l = sample_chain(3);
  auto image = l.serialize();
  for (std::size_t i = 0; i < image.size(); ++i) {
    auto bad = image;
    bad[i] ^= 0x01;
    bool detected = false;
    try {
      Ledger::deserialize(bad);
    } catch (const LoadError&) {
      detected = true;
    } catch (const IntegrityError&) {
      detected = true;
    }
    ASSERT_TRUE(detected) << "offset " << i;
  }
}
