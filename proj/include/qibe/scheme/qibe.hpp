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

#include <stdexcept>
#include <string>
#include <string_view>

#include "qibe/lattice/keys.hpp"
#include "qibe/lattice/matrix.hpp"
#include "qibe/lattice/params.hpp"
#include "qibe/lattice/rng.hpp"
#include "qibe/revcirc/circuit.hpp"
#include "qibe/sim/sparse_state.hpp"

namespace qibe {

// Raised when a decryption leaves a work register entangled with the message.
class DecryptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Maps an arbitrary identity string to n bits through a fixed public XOF.
IdentityBits identity_from_string(std::string_view text, std::size_t n);

struct KeyPair {
  MasterPublicKey mpk;
  MasterSecretKey msk;
};

/// oracle_key: A uniform, msk a fresh PRF seed. basis: (A, T_A) from trapgen.
/// Throws std::invalid_argument if params do not suit the backend.
KeyPair qkeygen(const SchemeParams& params, KeyBackend backend, Rng& rng);

/// U = H(id) ∈ Z_q^{n×n}. Under oracle_key, H is programmed by the key
/// centre (U = A·R_id with R_id derived from the msk seed), so it needs msk.
ZqMatrix hash_id(const MasterPublicKey& mpk, const MasterSecretKey& msk, const IdentityBits& id);
/// Public evaluation; only defined for the basis backend (throws otherwise).
ZqMatrix hash_id(const MasterPublicKey& mpk, const IdentityBits& id);

/// R with A·R ≡ H(id). Deterministic per (msk, id) under both backends.
IdentityKey qextract(const MasterPublicKey& mpk, const MasterSecretKey& msk, const IdentityBits& id);

// A·R ≡ U exactly and every column of R within short_vector_bound.
bool verify_identity_key(const MasterPublicKey& mpk, const ZqMatrix& u, const IdentityKey& sk);

struct EncryptionRandomness {
  ZqVector s;    // uniform, length n
  IntVector e0;  // Gaussian, length n
  IntVector e;   // Gaussian, length m
  Seed seed{};   // stream the three were drawn from
};

EncryptionRandomness sample_encryption_randomness(const SchemeParams& params, Rng& rng);

/// Quantum ciphertext: c1 and n work registers of L qubits each (register i
/// occupies qubits [i·L, (i+1)·L)).
struct Ciphertext {
  ZqVector c1;
  sim::SparseState psi;
  std::string params_fingerprint;
};

/// Encrypts an n-qubit plaintext under U = H(id). One set of randomness is
/// drawn per call and shared by every branch and every bit.
Ciphertext qencrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const sim::SparseState& plaintext, Rng& rng);
Ciphertext qencrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const sim::SparseState& plaintext,
                    const EncryptionRandomness& randomness);

/// Returns the n-qubit message state. Throws DecryptionError if any scratch
/// register is left nonzero or the ciphertext register stays entangled with
/// the message.
sim::SparseState qdecrypt(const MasterPublicKey& mpk, const IdentityKey& sk, const Ciphertext& ct);

// Value of work register i on one branch of psi.
std::int64_t register_value(const sim::BasisKey& key, std::size_t i, unsigned bit_length);

// Checks c1 and psi against mpk's parameters; throws std::invalid_argument
// whose message starts with "malformed ciphertext".
void validate(const MasterPublicKey& mpk, const Ciphertext& ct);

}  // namespace qibe
