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

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qibe/lattice/digest.hpp"
#include "qibe/lattice/matrix.hpp"
#include "qibe/lattice/params.hpp"

namespace qibe {

// Identity as n bits, each 0 or 1; index 0 is the first character of the
// textual form.
using IdentityBits = std::vector<std::uint8_t>;

std::string bits_to_string(const IdentityBits& bits);
// Throws std::invalid_argument unless `text` is a nonempty string of 0/1.
IdentityBits bits_from_string(std::string_view text);

struct HashConfig {
  KeyBackend backend = KeyBackend::oracle_key;
  Seed public_seed{};

  bool operator==(const HashConfig&) const = default;
};

struct MasterPublicKey {
  SchemeParams params;
  ZqMatrix a;
  HashConfig hash_config;

  bool operator==(const MasterPublicKey&) const = default;
};

struct OracleKeySecret {
  Seed seed{};
  bool operator==(const OracleKeySecret&) const = default;
};

struct BasisSecret {
  IntMatrix basis;
  bool operator==(const BasisSecret&) const = default;
};

struct MasterSecretKey {
  std::variant<OracleKeySecret, BasisSecret> material;

  KeyBackend backend() const {
    return std::holds_alternative<BasisSecret>(material) ? KeyBackend::basis
                                                         : KeyBackend::oracle_key;
  }
  bool operator==(const MasterSecretKey&) const = default;
};

struct IdentityKey {
  IdentityBits id;
  IntMatrix r;  // m×n

  bool operator==(const IdentityKey&) const = default;
};

// JSON forms. Parsers throw std::invalid_argument on malformed or
// inconsistent documents.
nlohmann::json to_json(const MasterPublicKey& mpk);
nlohmann::json to_json(const MasterSecretKey& msk);
nlohmann::json to_json(const IdentityKey& sk);
MasterPublicKey mpk_from_json(const nlohmann::json& j);
MasterSecretKey msk_from_json(const nlohmann::json& j, const MasterPublicKey& mpk);
IdentityKey identity_key_from_json(const nlohmann::json& j, const MasterPublicKey& mpk);

// Short hex digest of the canonical mpk JSON; used to bind ciphertexts and
// handshake peers to one public key.
std::string fingerprint(const MasterPublicKey& mpk);

}  // namespace qibe
