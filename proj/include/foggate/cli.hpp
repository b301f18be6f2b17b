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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "foggate/crypto.hpp"
#include "foggate/identity.hpp"

namespace foggate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitUsage = 2;

/// Key files are JSON: {"serial_id", "private_key_pem", "public_key_der_hex"}.
/// The companion ".pub" file holds only serial_id and public_key_der_hex.
void write_key_file(const std::filesystem::path& path, const DeviceIdentity& id);
/// Throws ConfigError.
DeviceIdentity read_key_file(const std::filesystem::path& path);

struct PublicIdentity {
  std::string serial_id;
  crypto::PublicKey key;
};
/// Reads either a key file or a ".pub" file. Throws ConfigError.
PublicIdentity read_public_file(const std::filesystem::path& path);

/// Runs the command line (args excludes the program name) and returns the
/// exit code. Reads FOGGATE_CONFIG for defaults that flags override.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foggate::cli
