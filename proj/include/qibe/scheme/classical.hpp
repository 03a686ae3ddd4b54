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

#include <cstdint>
#include <vector>

#include "qibe/scheme/qibe.hpp"

namespace qibe {

// Message bits, bit i as entry i (qubit i of a basis plaintext).
using MessageBits = std::vector<std::uint8_t>;

struct ClassicalCiphertext {
  ZqVector c0;
  ZqVector c1;
};

/// c0 = Uᵀs + e0 + floor(q/2)·m, c1 = Aᵀs + e (mod q).
ClassicalCiphertext classical_encrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const MessageBits& m,
                                      const EncryptionRandomness& randomness);

/// y = Rᵀc1; bit i is 1 iff |(c0_i - y_i) mod q - floor(q/2)| < floor(q/4).
MessageBits classical_decrypt(const MasterPublicKey& mpk, const IdentityKey& sk, const ClassicalCiphertext& ct);

// The per-coordinate decision rule on its own.
bool decide_bit(std::int64_t c0, std::int64_t y, std::int64_t q);

// Bits of a basis plaintext / the basis plaintext for given bits.
MessageBits bits_of(const sim::BasisKey& key);
sim::SparseState basis_plaintext(const MessageBits& m);

}  // namespace qibe
