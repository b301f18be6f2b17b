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

#include "foggate/ledger.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>

#include "foggate/errors.hpp"

namespace foggate::ledger {

namespace {

// kind + serial digest + timestamp, the shortest possible entry prefix
constexpr std::size_t kMinEntrySize = 1 + crypto::kDigestSize + 8;

void encode_entry(ByteWriter& w, const LedgerEntry& e) {
  w.u8(static_cast<std::uint8_t>(e.kind)).raw(e.serial_id_digest.view()).u64(e.timestamp);
  switch (e.kind) {
    case EntryKind::identity:
      if (!e.public_key || !e.status || e.tx_digest)
        throw InvalidArgument("identity entry must carry public key and status only");
      w.var16(*e.public_key).u8(static_cast<std::uint8_t>(*e.status));
      break;
    case EntryKind::transaction_record:
      if (!e.tx_digest || e.public_key || e.status)
        throw InvalidArgument("transaction entry must carry tx digest only");
      w.raw(e.tx_digest->view());
      break;
    default:
      throw InvalidArgument("unknown entry kind");
  }
}

LedgerEntry decode_entry(ByteReader& r) {
  LedgerEntry e;
  auto kind = r.u8();
  e.serial_id_digest = Digest::from(r.raw(crypto::kDigestSize));
  e.timestamp = r.u64();
  switch (kind) {
    case static_cast<std::uint8_t>(EntryKind::identity): {
      e.kind = EntryKind::identity;
      auto key = r.var16();
      e.public_key = Bytes(key.begin(), key.end());
      auto status = r.u8();
      if (status != static_cast<std::uint8_t>(DeviceStatus::allowed) &&
          status != static_cast<std::uint8_t>(DeviceStatus::blocked))
        throw ParseError("unknown device status");
      e.status = static_cast<DeviceStatus>(status);
      break;
    }
    case static_cast<std::uint8_t>(EntryKind::transaction_record):
      e.kind = EntryKind::transaction_record;
      e.tx_digest = Digest::from(r.raw(crypto::kDigestSize));
      break;
    default:
      throw ParseError("unknown entry kind");
  }
  return e;
}

Block decode_block(ByteView record) {
  ByteReader r(record);
  Block b;
  b.index = r.u64();
  b.prev_hash = Digest::from(r.raw(crypto::kDigestSize));
  b.timestamp = r.u64();
  auto count = r.u32();
  if (count > r.remaining() / kMinEntrySize) throw ParseError("entry count exceeds block size");
  b.entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) b.entries.push_back(decode_entry(r));
  b.block_hash = Digest::from(r.raw(crypto::kDigestSize));
  r.expect_done("block record");
  return b;
}

}  // namespace

const char* to_string(EntryKind k) {
  return k == EntryKind::identity ? "identity" : "transaction";
}

const char* to_string(DeviceStatus s) { return s == DeviceStatus::allowed ? "allowed" : "blocked"; }

std::uint64_t now_seconds() {
  using namespace std::chrono;
  return static_cast<std::uint64_t>(
      duration_cast<seconds>(system_clock::now().time_since_epoch()).count());
}

LedgerEntry LedgerEntry::identity(const Digest& serial_digest, Bytes public_key_der,
                                  DeviceStatus status, std::uint64_t timestamp) {
  LedgerEntry e;
  e.kind = EntryKind::identity;
  e.serial_id_digest = serial_digest;
  e.public_key = std::move(public_key_der);
  e.status = status;
  e.timestamp = timestamp;
  return e;
}

LedgerEntry LedgerEntry::transaction(const Digest& serial_digest, const Digest& tx_digest,
                                     std::uint64_t timestamp) {
  LedgerEntry e;
  e.kind = EntryKind::transaction_record;
  e.serial_id_digest = serial_digest;
  e.tx_digest = tx_digest;
  e.timestamp = timestamp;
  return e;
}

Bytes Block::canonical_body() const {
  ByteWriter w(64 + entries.size() * 64);
  w.u64(index).raw(prev_hash.view()).u64(timestamp).u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& e : entries) encode_entry(w, e);
  return std::move(w).take();
}

Ledger Ledger::genesis(std::optional<std::uint64_t> timestamp) {
  Block b;
  b.index = 0;
  b.prev_hash = Digest::zero();
  b.timestamp = timestamp.value_or(now_seconds());
  b.block_hash = b.compute_hash();
  Ledger l;
  l.blocks_.push_back(std::make_shared<const Block>(std::move(b)));
  return l;
}

Ledger Ledger::from_blocks(std::vector<Block> blocks) {
  Ledger l;
  l.blocks_.reserve(blocks.size());
  for (auto& b : blocks) l.blocks_.push_back(std::make_shared<const Block>(std::move(b)));
  return l;
}

void Ledger::push(std::vector<LedgerEntry> entries, std::optional<std::uint64_t> timestamp) {
  if (entries.empty()) throw InvalidArgument("append_block requires at least one entry");
  if (blocks_.empty()) throw InvalidArgument("ledger has no genesis block");
  const Block& prev = tip();
  Block b;
  b.index = prev.index + 1;
  b.prev_hash = prev.block_hash;
  b.timestamp = std::max(timestamp.value_or(now_seconds()), prev.timestamp);
  b.entries = std::move(entries);
  b.block_hash = b.compute_hash();
  blocks_.push_back(std::make_shared<const Block>(std::move(b)));
}

Ledger Ledger::append_block(std::vector<LedgerEntry> entries,
                            std::optional<std::uint64_t> timestamp) const& {
  Ledger copy = *this;
  copy.push(std::move(entries), timestamp);
  return copy;
}

Ledger Ledger::append_block(std::vector<LedgerEntry> entries,
                            std::optional<std::uint64_t> timestamp) && {
  push(std::move(entries), timestamp);
  return std::move(*this);
}

Ledger Ledger::register_device(std::string_view serial_id, const crypto::PublicKey& key,
                               DeviceStatus status, std::optional<std::uint64_t> timestamp) const {
  if (serial_id.empty()) throw InvalidArgument("serial ID must not be empty");
  auto ts = timestamp.value_or(now_seconds());
  return append_block({LedgerEntry::identity(crypto::one_way_hash(serial_id), key.der(), status, ts)},
                      ts);
}

Ledger Ledger::register_device(std::string_view serial_id, ByteView public_key_der,
                               DeviceStatus status, std::optional<std::uint64_t> timestamp) const {
  return register_device(serial_id, crypto::PublicKey::from_der(public_key_der), status, timestamp);
}

Ledger Ledger::record_transaction(const Digest& tx_digest, const Digest& serial_digest,
                                  std::optional<std::uint64_t> timestamp) const& {
  auto ts = timestamp.value_or(now_seconds());
  return append_block({LedgerEntry::transaction(serial_digest, tx_digest, ts)}, ts);
}

Ledger Ledger::record_transaction(const Digest& tx_digest, const Digest& serial_digest,
                                  std::optional<std::uint64_t> timestamp) && {
  auto ts = timestamp.value_or(now_seconds());
  return std::move(*this).append_block({LedgerEntry::transaction(serial_digest, tx_digest, ts)}, ts);
}

std::optional<LedgerEntry> Ledger::lookup(std::string_view serial_id) const {
  return lookup(crypto::one_way_hash(serial_id));
}

std::optional<LedgerEntry> Ledger::lookup(const Digest& serial_digest) const {
  for (auto b = blocks_.rbegin(); b != blocks_.rend(); ++b) {
    const auto& entries = (*b)->entries;
    for (auto e = entries.rbegin(); e != entries.rend(); ++e)
      if (e->kind == EntryKind::identity && e->serial_id_digest == serial_digest) return *e;
  }
  return std::nullopt;
}

IntegrityReport Ledger::verify_chain() const {
  IntegrityReport report;
  auto bad = [&](std::size_t i) {
    report.valid = false;
    report.first_bad_index = i;
    return report;
  };
  if (blocks_.empty()) return bad(0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = *blocks_[i];
    if (b.index != i) return bad(i);
    const Digest expected_prev = i == 0 ? Digest::zero() : blocks_[i - 1]->block_hash;
    if (b.prev_hash != expected_prev) return bad(i);
    try {
      if (b.compute_hash() != b.block_hash) return bad(i);
    } catch (const InvalidArgument&) {
      return bad(i);  // entry shape violates its kind
    }
  }
  return report;
}

std::vector<Block> Ledger::blocks() const {
  std::vector<Block> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(*b);
  return out;
}

Bytes Ledger::serialize() const {
  ByteWriter w;
  w.raw(as_bytes(std::string_view(kLedgerMagic, 4))).u64(blocks_.size());
  for (const auto& b : blocks_) {
    auto body = b->canonical_body();
    w.u32(static_cast<std::uint32_t>(body.size() + crypto::kDigestSize))
        .raw(body)
        .raw(b->block_hash.view());
  }
  return std::move(w).take();
}

Ledger Ledger::decode(ByteView image) {
  Ledger l;
  try {
    ByteReader r(image);
    auto magic = r.raw(4);
    if (!std::equal(magic.begin(), magic.end(), kLedgerMagic))
      throw ParseError("bad magic");
    auto count = r.u64();
    if (count == 0) throw ParseError("ledger file holds no blocks");
    if (count > r.remaining() / 4) throw ParseError("block count exceeds file size");
    l.blocks_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
      l.blocks_.push_back(std::make_shared<const Block>(decode_block(r.var32())));
    r.expect_done("ledger file");
  } catch (const ParseError& e) {
    throw LoadError(std::string("ledger decode failed: ") + e.what());
  }
  return l;
}

Ledger Ledger::deserialize(ByteView image) {
  auto l = decode(image);
  auto report = l.verify_chain();
  if (!report.valid)
    throw IntegrityError("ledger integrity check failed at block " +
                         std::to_string(report.first_bad_index.value_or(0)));
  return l;
}

void Ledger::save(const std::filesystem::path& path) const {
  auto image = serialize();
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot write ledger file " + path.string());
    out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
    if (!out) throw LoadError("short write to ledger file " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw LoadError("cannot replace ledger file " + path.string() + ": " + ec.message());
}

namespace {
Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open ledger file " + path.string());
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}
}  // namespace

Ledger Ledger::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

Ledger Ledger::load_unverified(const std::filesystem::path& path) { return decode(read_file(path)); }

bool Ledger::operator==(const Ledger& o) const {
  return std::equal(blocks_.begin(), blocks_.end(), o.blocks_.begin(), o.blocks_.end(),
                    [](const auto& a, const auto& b) { return *a == *b; });
}

}  // namespace foggate::ledger
