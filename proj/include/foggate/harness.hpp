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
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foggate/crypto.hpp"

// Threat-model scenarios run on the simulated network. Each scenario builds a
// fresh world (server, clients, adversary endpoints), drives it step by step
// and reports how many adversarial attempts were blocked. Reports are free of
// digests and ciphertext so that a given seed always yields the same text,
// even though key generation and nonces come from the system RNG.
namespace foggate::harness {

using Millis = std::chrono::milliseconds;

enum class Category {
  spoofing,
  tampering,
  repudiation,
  info_disclosure,
  dos_client,
  dos_server,
  privilege,
};

enum class Target { client, server };

enum class CellVerdict { defended, vulnerable, untested };

const char* to_string(Category c);
const char* to_string(Target t);
const char* to_string(CellVerdict v);
/// Accepts the names printed by to_string and their dashed spellings.
std::optional<Category> parse_category(std::string_view name);
std::optional<Target> parse_target(std::string_view name);

struct ScenarioConfig {
  std::uint64_t seed = 42;
  unsigned clients = 3;
  /// 0 selects the scenario's own default.
  unsigned attempts = 0;
  unsigned key_bits = 2048;
  unsigned flood_rate = 64;
  unsigned flood_steps = 24;
  unsigned client_capacity = 4;    // frames a client can process per step
  unsigned server_capacity = 1024;  // frames the server can process per step
  double budget_factor = 2.0;
  Millis tick{1000};
  Millis client_timeout{5000};
};

struct Scenario {
  Category name = Category::spoofing;
  Target target = Target::server;
  ScenarioConfig config;
};

struct ScenarioReport {
  Category category = Category::spoofing;
  Target target = Target::server;
  std::uint64_t seed = 0;
  std::size_t attempted = 0;
  std::size_t blocked = 0;
  CellVerdict verdict = CellVerdict::untested;
  std::vector<std::string> evidence;

  /// One JSON object on a single line with a fixed key order.
  std::string to_record() const;
};

/// Caches key pairs by role so repeated scenarios do not pay for RSA key
/// generation again.
class KeyPool {
public:
  explicit KeyPool(unsigned bits = crypto::kDefaultKeyBits) : bits_(bits) {}
  const crypto::KeyPair& get(const std::string& role);
  unsigned bits() const { return bits_; }

private:
  unsigned bits_;
  std::map<std::string, crypto::KeyPair> keys_;
};

/// Throws ConfigError for an invalid pairing (dos_client must target the
/// client, dos_server the server) or a zero client count.
ScenarioReport run_scenario(const Scenario& scenario, KeyPool* pool = nullptr);

/// One scenario per matrix cell, client row first.
std::vector<Scenario> default_scenarios(std::uint64_t seed = 42);
std::vector<ScenarioReport> run_all(std::uint64_t seed = 42, KeyPool* pool = nullptr);

inline constexpr std::array<char, 6> kMatrixColumns{'S', 'T', 'R', 'I', 'D', 'E'};

/// Column of a category in the S T R I D E matrix.
std::size_t column_of(Category c);

/// The verdict the protocol is expected to earn for a cell.
CellVerdict expected_verdict(Category c, Target t);

struct Matrix {
  // [0] is the client row, [1] the server row
  std::array<std::array<CellVerdict, 6>, 2> cells{};

  CellVerdict at(Target t, std::size_t column) const;
  /// "X" defended, "-" vulnerable, "?" untested, e.g. "XXXX-X".
  std::string row(Target t) const;
  /// Two-row text table with a header line.
  std::string render() const;
  bool operator==(const Matrix&) const = default;
};

/// Cells without a report stay untested. Two reports for the same cell are a
/// ConfigError.
Matrix stride_matrix(const std::vector<ScenarioReport>& reports);
Matrix expected_matrix();

/// The report file: one record per scenario, then one matrix record.
std::string report_text(const std::vector<ScenarioReport>& reports);

}  // namespace foggate::harness
