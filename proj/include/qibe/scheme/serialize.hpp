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

#include <json.hpp>

#include "qibe/scheme/qibe.hpp"

namespace qibe {

// {c1, psi: {width, branches}, params_fingerprint}
nlohmann::json to_json(const Ciphertext& ct);
// Structural parse plus validate(); every failure is std::invalid_argument
// starting with "malformed ciphertext".
Ciphertext ciphertext_from_json(const nlohmann::json& j, const MasterPublicKey& mpk);

// {n, branches}
nlohmann::json plaintext_to_json(const sim::SparseState& s);
sim::SparseState plaintext_from_json(const nlohmann::json& j);

}  // namespace qibe
