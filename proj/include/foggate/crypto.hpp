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

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "foggate/bytes.hpp"

// Forward declaration keeps OpenSSL headers out of the public surface.
struct evp_pkey_st;

namespace foggate::crypto {

inline constexpr std::size_t kDigestSize = 32;
inline constexpr std::size_t kSymmetricKeySize = 32;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;
inline constexpr unsigned kDefaultKeyBits = 2048;

/// SHA-256 output.
struct Digest {
  std::array<std::uint8_t, kDigestSize> bytes{};

  static Digest from(ByteView b);  // throws InvalidArgument unless 32 bytes
  static Digest zero() { return {}; }

  ByteView view() const { return bytes; }
  std::string hex() const { return to_hex(bytes); }

  auto operator<=>(const Digest&) const = default;
};

enum class KeyDerivation : std::uint8_t { serial_id_hash, ephemeral_random };

struct SymmetricKey {
  std::array<std::uint8_t, kSymmetricKeySize> bytes{};
  KeyDerivation derivation = KeyDerivation::ephemeral_random;

  static SymmetricKey random();
};

struct Signature {
  Bytes bytes;
  bool operator==(const Signature&) const = default;
};

using PkeyHandle = std::shared_ptr<evp_pkey_st>;

struct KeyPair;

/// RSA public key. Immutable; copies share the underlying handle.
class PublicKey {
public:
  /// Parses DER SubjectPublicKeyInfo. Throws InvalidArgument when malformed
  /// or not RSA.
  static PublicKey from_der(ByteView der);

  const Bytes& der() const { return der_; }
  unsigned bits() const;
  evp_pkey_st* handle() const { return pkey_.get(); }

  bool operator==(const PublicKey& o) const { return der_ == o.der_; }

private:
  PublicKey(PkeyHandle pkey, Bytes der) : pkey_(std::move(pkey)), der_(std::move(der)) {}
  friend class PrivateKey;
  friend struct KeyPair;
  friend KeyPair generate_keypair(unsigned bits);

  PkeyHandle pkey_;
  Bytes der_;
};

/// RSA private key. Only ever persisted through to_pem() into local key files.
class PrivateKey {
public:
  static PrivateKey from_pem(std::string_view pem);

  std::string to_pem() const;
  PublicKey public_key() const;
  evp_pkey_st* handle() const { return pkey_.get(); }

private:
  explicit PrivateKey(PkeyHandle pkey) : pkey_(std::move(pkey)) {}
  friend struct KeyPair;
  friend KeyPair generate_keypair(unsigned bits);

  PkeyHandle pkey_;
};

struct KeyPair {
  PublicKey public_key;
  PrivateKey private_key;
};

/// bits must be 2048 or 3072; anything else raises ConfigError.
KeyPair generate_keypair(unsigned bits = kDefaultKeyBits);

Digest one_way_hash(ByteView data);
inline Digest one_way_hash(std::string_view s) { return one_way_hash(as_bytes(s)); }

/// Inner-layer key: the hash of the serial ID's UTF-8 bytes.
SymmetricKey derive_inner_key(std::string_view serial_id);

Bytes random_bytes(std::size_t n);

struct SealedData {
  std::array<std::uint8_t, kNonceSize> nonce{};
  Bytes ciphertext;  // AES-256-GCM ciphertext followed by the 16-byte tag
};

SealedData symmetric_encrypt(const SymmetricKey& key, ByteView plaintext);

/// Throws DecryptionFailure for a wrong key, tampered data or bad lengths;
/// the causes are deliberately indistinguishable.
Bytes symmetric_decrypt(const SymmetricKey& key, ByteView nonce, ByteView ciphertext);

struct WrappedEnvelope {
  Bytes wrapped_key;  // RSA-OAEP(SHA-256) of the ephemeral symmetric key
  std::array<std::uint8_t, kNonceSize> nonce{};
  Bytes ciphertext;

  bool operator==(const WrappedEnvelope&) const = default;
};

WrappedEnvelope hybrid_wrap(const PublicKey& recipient, ByteView payload);
Bytes hybrid_unwrap(const PrivateKey& recipient, const WrappedEnvelope& envelope);

/// Raw RSA-OAEP on small messages (the ephemeral key).
Bytes asymmetric_encrypt(const PublicKey& key, ByteView message);
Bytes asymmetric_decrypt(const PrivateKey& key, ByteView ciphertext);

/// RSA-PSS over an already computed digest.
Signature sign(const PrivateKey& key, const Digest& digest);

/// Never throws; malformed signatures verify false.
bool verify(const PublicKey& key, const Digest& digest, const Signature& sig) noexcept;

}  // namespace foggate::crypto
