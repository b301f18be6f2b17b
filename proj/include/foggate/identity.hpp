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

#include <string>

#include "foggate/crypto.hpp"

namespace foggate {

/// Serial ID plus key pair; the unit the ledger registers.
struct DeviceIdentity {
  std::string serial_id;
  crypto::KeyPair keys;

  const crypto::PublicKey& public_key() const { return keys.public_key; }
  const crypto::PrivateKey& private_key() const { return keys.private_key; }
};

/// Random "dev-" prefixed serial with 16 hex digits.
std::string generate_serial_id();

}  // namespace foggate
