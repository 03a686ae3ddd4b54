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

#include "qibe/scheme/classical.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qibe {

ClassicalCiphertext classical_encrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const MessageBits& m,
                                      const EncryptionRandomness& randomness) {
  const auto& p = mpk.params;
  if (m.size() != p.n) throw std::invalid_argument("classical_encrypt: message must have n bits");
  ZqVector c0 = add(transpose_multiply(u, randomness.s), randomness.e0);
  for (std::size_t i = 0; i < p.n; ++i)
    if (m[i]) c0.set(i, c0[i] + p.half_q());
  return {std::move(c0), add(transpose_multiply(mpk.a, randomness.s), randomness.e)};
}

bool decide_bit(std::int64_t c0, std::int64_t y, std::int64_t q) {
  const std::int64_t b = reduce_mod(c0 - y, q) - q / 2;
  return std::llabs(b) < q / 4;
}

MessageBits classical_decrypt(const MasterPublicKey& mpk, const IdentityKey& sk, const ClassicalCiphertext& ct) {
  const auto& p = mpk.params;
  if (ct.c0.size() != p.n || ct.c1.size() != p.m) throw std::invalid_argument("classical_decrypt: bad ciphertext shape");
  const ZqVector y = transpose_multiply(sk.r, ct.c1);
  MessageBits out(p.n);
  for (std::size_t i = 0; i < p.n; ++i) out[i] = decide_bit(ct.c0[i], y[i], p.q);
  return out;
}

MessageBits bits_of(const sim::BasisKey& key) {
  MessageBits out(key.width());
  for (revcirc::Qubit i = 0; i < key.width(); ++i) out[i] = key.get(i);
  return out;
}

sim::SparseState basis_plaintext(const MessageBits& m) {
  sim::BasisKey key(static_cast<revcirc::Qubit>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) key.set(static_cast<revcirc::Qubit>(i), m[i] != 0);
  return sim::from_basis(key);
}

}  // namespace qibe
