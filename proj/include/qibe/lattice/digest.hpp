// Copyright 2026 The QIBE Authors
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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qibe {

using Seed = std::array<std::uint8_t, 32>;

// BLAKE2b-256 of `data`, optionally keyed.
Seed digest(std::span<const std::uint8_t> data);
Seed keyed_digest(const Seed& key, std::span<const std::uint8_t> data);

// Convenience overload hashing a domain label followed by the payload.
Seed digest(std::string_view label, std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::string to_base64(std::span<const std::uint8_t> bytes);
// Throws std::invalid_argument on malformed input.
std::vector<std::uint8_t> from_base64(std::string_view text);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace qibe
