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

#include "foggate/crypto.hpp"

#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/pem.h>
#include <openssl/rand.h>
#include <openssl/rsa.h>
#include <openssl/x509.h>

#include <algorithm>

#include "foggate/errors.hpp"

namespace foggate::crypto {

namespace {

struct CtxFree {
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
  void operator()(BIO* b) const { BIO_free(b); }
};
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, CtxFree>;
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CtxFree>;
using Bio = std::unique_ptr<BIO, CtxFree>;

PkeyHandle adopt(EVP_PKEY* p) { return PkeyHandle(p, EVP_PKEY_free); }

[[noreturn]] void fail(const char* what) {
  unsigned long code = ERR_get_error();
  char buf[256] = {0};
  if (code != 0) ERR_error_string_n(code, buf, sizeof buf);
  ERR_clear_error();
  throw CryptoError(std::string(what) + (code ? std::string(": ") + buf : ""));
}

Bytes public_der(EVP_PKEY* p) {
  int len = i2d_PUBKEY(p, nullptr);
  if (len <= 0) fail("i2d_PUBKEY");
  Bytes out(static_cast<std::size_t>(len));
  auto* cursor = out.data();
  i2d_PUBKEY(p, &cursor);
  return out;
}

PkeyCtx ctx_for(EVP_PKEY* key) {
  PkeyCtx ctx(EVP_PKEY_CTX_new(key, nullptr));
  if (!ctx) fail("EVP_PKEY_CTX_new");
  return ctx;
}

void set_oaep(EVP_PKEY_CTX* ctx) {
  if (EVP_PKEY_CTX_set_rsa_padding(ctx, RSA_PKCS1_OAEP_PADDING) <= 0 ||
      EVP_PKEY_CTX_set_rsa_oaep_md(ctx, EVP_sha256()) <= 0 ||
      EVP_PKEY_CTX_set_rsa_mgf1_md(ctx, EVP_sha256()) <= 0)
    fail("OAEP parameters");
}

bool set_pss(EVP_PKEY_CTX* ctx) {
  return EVP_PKEY_CTX_set_rsa_padding(ctx, RSA_PKCS1_PSS_PADDING) > 0 &&
         EVP_PKEY_CTX_set_signature_md(ctx, EVP_sha256()) > 0 &&
         EVP_PKEY_CTX_set_rsa_mgf1_md(ctx, EVP_sha256()) > 0 &&
         EVP_PKEY_CTX_set_rsa_pss_saltlen(ctx, static_cast<int>(kDigestSize)) > 0;
}

}  // namespace

Digest Digest::from(ByteView b) {
  if (b.size() != kDigestSize) throw InvalidArgument("digest must be 32 bytes");
  Digest d;
  std::copy(b.begin(), b.end(), d.bytes.begin());
  return d;
}

SymmetricKey SymmetricKey::random() {
  SymmetricKey k;
  if (RAND_bytes(k.bytes.data(), static_cast<int>(k.bytes.size())) != 1) fail("RAND_bytes");
  k.derivation = KeyDerivation::ephemeral_random;
  return k;
}

PublicKey PublicKey::from_der(ByteView der) {
  const unsigned char* cursor = der.data();
  EVP_PKEY* raw = d2i_PUBKEY(nullptr, &cursor, static_cast<long>(der.size()));
  if (raw == nullptr) {
    ERR_clear_error();
    throw InvalidArgument("malformed public key encoding");
  }
  auto handle = adopt(raw);
  if (cursor != der.data() + der.size())
    throw InvalidArgument("trailing bytes after public key");
  if (EVP_PKEY_get_base_id(raw) != EVP_PKEY_RSA)
    throw InvalidArgument("public key is not RSA");
  return PublicKey(std::move(handle), Bytes(der.begin(), der.end()));
}

unsigned PublicKey::bits() const { return static_cast<unsigned>(EVP_PKEY_get_bits(pkey_.get())); }

PrivateKey PrivateKey::from_pem(std::string_view pem) {
  Bio bio(BIO_new_mem_buf(pem.data(), static_cast<int>(pem.size())));
  if (!bio) fail("BIO_new_mem_buf");
  EVP_PKEY* raw = PEM_read_bio_PrivateKey(bio.get(), nullptr, nullptr, nullptr);
  if (raw == nullptr) {
    ERR_clear_error();
    throw InvalidArgument("malformed private key PEM");
  }
  auto handle = adopt(raw);
  if (EVP_PKEY_get_base_id(raw) != EVP_PKEY_RSA) throw InvalidArgument("private key is not RSA");
  return PrivateKey(std::move(handle));
}

std::string PrivateKey::to_pem() const {
  Bio bio(BIO_new(BIO_s_mem()));
  if (!bio) fail("BIO_new");
  if (PEM_write_bio_PrivateKey(bio.get(), pkey_.get(), nullptr, nullptr, 0, nullptr, nullptr) != 1)
    fail("PEM_write_bio_PrivateKey");
  char* data = nullptr;
  long len = BIO_get_mem_data(bio.get(), &data);
  return std::string(data, static_cast<std::size_t>(len));
}

PublicKey PrivateKey::public_key() const {
  auto der = public_der(pkey_.get());
  return PublicKey::from_der(der);
}

KeyPair generate_keypair(unsigned bits) {
  if (bits != 2048 && bits != 3072)
    throw ConfigError("unsupported RSA key size " + std::to_string(bits) + " (use 2048 or 3072)");
  PkeyCtx ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_RSA, nullptr));
  if (!ctx || EVP_PKEY_keygen_init(ctx.get()) <= 0 ||
      EVP_PKEY_CTX_set_rsa_keygen_bits(ctx.get(), static_cast<int>(bits)) <= 0)
    fail("RSA keygen setup");
  EVP_PKEY* raw = nullptr;
  if (EVP_PKEY_keygen(ctx.get(), &raw) <= 0) fail("EVP_PKEY_keygen");
  auto handle = adopt(raw);
  auto der = public_der(raw);
  return KeyPair{PublicKey(handle, std::move(der)), PrivateKey(handle)};
}

Digest one_way_hash(ByteView data) {
  Digest d;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != kDigestSize)
    fail("EVP_Digest");
  return d;
}

SymmetricKey derive_inner_key(std::string_view serial_id) {
  if (serial_id.empty()) throw InvalidIdentity("serial ID must not be empty");
  SymmetricKey k;
  k.bytes = one_way_hash(serial_id).bytes;
  k.derivation = KeyDerivation::serial_id_hash;
  return k;
}

Bytes random_bytes(std::size_t n) {
  Bytes out(n);
  if (n > 0 && RAND_bytes(out.data(), static_cast<int>(n)) != 1) fail("RAND_bytes");
  return out;
}

SealedData symmetric_encrypt(const SymmetricKey& key, ByteView plaintext) {
  SealedData out;
  if (RAND_bytes(out.nonce.data(), static_cast<int>(out.nonce.size())) != 1) fail("RAND_bytes");
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(), out.nonce.data()) != 1)
    fail("AES-GCM init");
  out.ciphertext.resize(plaintext.size() + kTagSize);
  int len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1)
    fail("AES-GCM update");
  int tail = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + len, &tail) != 1) fail("AES-GCM final");
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(kTagSize),
                          out.ciphertext.data() + plaintext.size()) != 1)
    fail("AES-GCM tag");
  return out;
}

Bytes symmetric_decrypt(const SymmetricKey& key, ByteView nonce, ByteView ciphertext) {
  if (nonce.size() != kNonceSize || ciphertext.size() < kTagSize)
    throw DecryptionFailure("decryption failed");
  const std::size_t body = ciphertext.size() - kTagSize;
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.bytes.data(), nonce.data()) != 1)
    fail("AES-GCM init");
  Bytes out(body);
  int len = 0;
  if (body > 0 &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &len, ciphertext.data(), static_cast<int>(body)) != 1)
    throw DecryptionFailure("decryption failed");
  Bytes tag(ciphertext.end() - kTagSize, ciphertext.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(kTagSize), tag.data()) != 1)
    fail("AES-GCM tag");
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) {
    ERR_clear_error();
    throw DecryptionFailure("decryption failed");
  }
  return out;
}

Bytes asymmetric_encrypt(const PublicKey& key, ByteView message) {
  auto ctx = ctx_for(key.handle());
  if (EVP_PKEY_encrypt_init(ctx.get()) <= 0) fail("encrypt init");
  set_oaep(ctx.get());
  std::size_t len = 0;
  if (EVP_PKEY_encrypt(ctx.get(), nullptr, &len, message.data(), message.size()) <= 0)
    fail("RSA-OAEP size");
  Bytes out(len);
  if (EVP_PKEY_encrypt(ctx.get(), out.data(), &len, message.data(), message.size()) <= 0)
    fail("RSA-OAEP encrypt");
  out.resize(len);
  return out;
}

Bytes asymmetric_decrypt(const PrivateKey& key, ByteView ciphertext) {
  auto ctx = ctx_for(key.handle());
  if (EVP_PKEY_decrypt_init(ctx.get()) <= 0) fail("decrypt init");
  set_oaep(ctx.get());
  std::size_t len = 0;
  if (EVP_PKEY_decrypt(ctx.get(), nullptr, &len, ciphertext.data(), ciphertext.size()) <= 0) {
    ERR_clear_error();
    throw DecryptionFailure("decryption failed");
  }
  Bytes out(len);
  if (EVP_PKEY_decrypt(ctx.get(), out.data(), &len, ciphertext.data(), ciphertext.size()) <= 0) {
    ERR_clear_error();
    throw DecryptionFailure("decryption failed");
  }
  out.resize(len);
  return out;
}

WrappedEnvelope hybrid_wrap(const PublicKey& recipient, ByteView payload) {
  auto ephemeral = SymmetricKey::random();
  auto sealed = symmetric_encrypt(ephemeral, payload);
  WrappedEnvelope env;
  env.wrapped_key = asymmetric_encrypt(recipient, ephemeral.bytes);
  env.nonce = sealed.nonce;
  env.ciphertext = std::move(sealed.ciphertext);
  return env;
}

Bytes hybrid_unwrap(const PrivateKey& recipient, const WrappedEnvelope& envelope) {
  auto key_bytes = asymmetric_decrypt(recipient, envelope.wrapped_key);
  if (key_bytes.size() != kSymmetricKeySize) throw DecryptionFailure("decryption failed");
  SymmetricKey key;
  std::copy(key_bytes.begin(), key_bytes.end(), key.bytes.begin());
  return symmetric_decrypt(key, envelope.nonce, envelope.ciphertext);
}

Signature sign(const PrivateKey& key, const Digest& digest) {
  auto ctx = ctx_for(key.handle());
  if (EVP_PKEY_sign_init(ctx.get()) <= 0 || !set_pss(ctx.get())) fail("sign init");
  std::size_t len = 0;
  if (EVP_PKEY_sign(ctx.get(), nullptr, &len, digest.bytes.data(), digest.bytes.size()) <= 0)
    fail("sign size");
  Signature sig;
  sig.bytes.resize(len);
  if (EVP_PKEY_sign(ctx.get(), sig.bytes.data(), &len, digest.bytes.data(), digest.bytes.size()) <= 0)
    fail("RSA-PSS sign");
  sig.bytes.resize(len);
  return sig;
}

bool verify(const PublicKey& key, const Digest& digest, const Signature& sig) noexcept {
  EVP_PKEY_CTX* raw = EVP_PKEY_CTX_new(key.handle(), nullptr);
  if (raw == nullptr) {
    ERR_clear_error();
    return false;
  }
  PkeyCtx ctx(raw);
  bool ok = EVP_PKEY_verify_init(ctx.get()) > 0 && set_pss(ctx.get()) &&
            EVP_PKEY_verify(ctx.get(), sig.bytes.data(), sig.bytes.size(), digest.bytes.data(),
                            digest.bytes.size()) == 1;
  ERR_clear_error();
  return ok;
}

}  // namespace foggate::crypto
