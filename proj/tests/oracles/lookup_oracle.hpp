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

// Registry modelled as a flat history list: the answer for a serial is the
// last registration made for it, found by scanning everything.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

struct Registered {
  std::string serial;
  std::vector<std::uint8_t> public_key_der;
  bool blocked = false;
};

class LookupOracle {
public:
  void record(Registered r) { history_.push_back(std::move(r)); }

  std::optional<Registered> lookup(const std::string& serial) const {
    std::optional<Registered> hit;
    for (const auto& r : history_)
      if (r.serial == serial) hit = r;
    return hit;
  }

private:
  std::vector<Registered> history_;
};

}  // namespace oracle
