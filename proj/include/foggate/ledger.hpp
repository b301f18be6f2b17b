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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "foggate/bytes.hpp"
#include "foggate/crypto.hpp"

namespace foggate::ledger {

using crypto::Digest;

enum class EntryKind : std::uint8_t { identity = 0x01, transaction_record = 0x02 };
enum class DeviceStatus : std::uint8_t { allowed = 0x01, blocked = 0x02 };

const char* to_string(EntryKind k);
const char* to_string(DeviceStatus s);

/// One ledger record. Identity entries carry public_key and status;
/// transaction records carry tx_digest. The factories are the only way the
/// library builds entries, so the split is kept.
struct LedgerEntry {
  EntryKind kind = EntryKind::identity;
  Digest serial_id_digest;
  std::optional<Bytes> public_key;  // DER SubjectPublicKeyInfo
  std::optional<DeviceStatus> status;
  std::optional<Digest> tx_digest;
  std::uint64_t timestamp = 0;

  static LedgerEntry identity(const Digest& serial_digest, Bytes public_key_der,
                              DeviceStatus status, std::uint64_t timestamp);
  static LedgerEntry transaction(const Digest& serial_digest, const Digest& tx_digest,
                                 std::uint64_t timestamp);

  bool operator==(const LedgerEntry&) const = default;
};

struct Block {
  std::uint64_t index = 0;
  Digest prev_hash;
  std::vector<LedgerEntry> entries;
  std::uint64_t timestamp = 0;
  Digest block_hash;

  /// Canonical encoding of (index, prev_hash, timestamp, entries); the
  /// block hash is the one-way hash of exactly these bytes.
  Bytes canonical_body() const;
  Digest compute_hash() const { return crypto::one_way_hash(canonical_body()); }

  bool operator==(const Block&) const = default;
};

struct IntegrityReport {
  bool valid = true;
  std::optional<std::uint64_t> first_bad_index;
};

std::uint64_t now_seconds();

/// Append-only hash-linked chain. Values are cheap to copy: blocks are
/// shared and immutable, so older Ledger values stay valid snapshots after
/// newer ones are derived from them.
class Ledger {
public:
  static Ledger genesis(std::optional<std::uint64_t> timestamp = std::nullopt);

  /// Wraps arbitrary blocks without checking them; verify_chain() reports
  /// what is wrong. Used by the decoder and by integrity tests.
  static Ledger from_blocks(std::vector<Block> blocks);

  /// Throws InvalidArgument when entries is empty.
  Ledger append_block(std::vector<LedgerEntry> entries,
                      std::optional<std::uint64_t> timestamp = std::nullopt) const&;
  Ledger append_block(std::vector<LedgerEntry> entries,
                      std::optional<std::uint64_t> timestamp = std::nullopt) &&;

  /// Appends one identity entry. Later registrations of the same serial
  /// supersede earlier ones; that is how devices get blocked.
  Ledger register_device(std::string_view serial_id, const crypto::PublicKey& key,
                         DeviceStatus status,
                         std::optional<std::uint64_t> timestamp = std::nullopt) const;
  /// Same, from an encoded key; malformed DER is InvalidArgument.
  Ledger register_device(std::string_view serial_id, ByteView public_key_der,
                         DeviceStatus status,
                         std::optional<std::uint64_t> timestamp = std::nullopt) const;

  Ledger record_transaction(const Digest& tx_digest, const Digest& serial_digest = Digest::zero(),
                            std::optional<std::uint64_t> timestamp = std::nullopt) const&;
  Ledger record_transaction(const Digest& tx_digest, const Digest& serial_digest = Digest::zero(),
                            std::optional<std::uint64_t> timestamp = std::nullopt) &&;

  /// Latest identity entry for the serial, scanning newest block first.
  std::optional<LedgerEntry> lookup(std::string_view serial_id) const;
  std::optional<LedgerEntry> lookup(const Digest& serial_digest) const;

  IntegrityReport verify_chain() const;

  std::size_t size() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return *blocks_.at(i); }
  const Block& tip() const { return *blocks_.back(); }
  std::vector<Block> blocks() const;

  /// File image: "FGL1", u64 block count, then per block a u32 length and
  /// the canonical body followed by the 32-byte block hash.
  Bytes serialize() const;

  /// Throws LoadError for framing problems, IntegrityError when the decoded
  /// chain fails verify_chain.
  static Ledger deserialize(ByteView image);

  void save(const std::filesystem::path& path) const;
  static Ledger load(const std::filesystem::path& path);
  /// Decodes without verify_chain, for tools that report what is broken.
  /// Throws LoadError only.
  static Ledger decode(ByteView image);
  static Ledger load_unverified(const std::filesystem::path& path);

  bool operator==(const Ledger& o) const;

private:
  Ledger() = default;
  void push(std::vector<LedgerEntry> entries, std::optional<std::uint64_t> timestamp);

  std::vector<std::shared_ptr<const Block>> blocks_;
};

inline constexpr char kLedgerMagic[4] = {'F', 'G', 'L', '1'};

}  // namespace foggate::ledger
