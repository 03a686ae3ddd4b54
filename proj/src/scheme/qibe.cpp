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

#include "qibe/scheme/qibe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qibe/lattice/gaussian.hpp"
#include "qibe/lattice/trapdoor.hpp"
#include "qibe/revcirc/builders.hpp"

namespace qibe {

namespace {

void require_id(const MasterPublicKey& mpk, const IdentityBits& id) {
  if (id.size() != mpk.params.n)
    throw std::invalid_argument("identity must have exactly n = " + std::to_string(mpk.params.n) + " bits");
}

// Per-identity stream for the key-first backend.
Rng oracle_stream(const OracleKeySecret& secret, const IdentityBits& id) {
  return Rng(keyed_digest(secret.seed, as_bytes("qibe.oracle_key:" + bits_to_string(id))));
}

// Extraction randomness for the basis backend, fixed by (T_A, id).
Rng extraction_stream(const BasisSecret& secret, const IdentityBits& id) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(secret.basis.data().size() * 8);
  for (std::int64_t v : secret.basis.data())
    for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * b)));
  const Seed key = digest("qibe.extract", bytes);
  return Rng(keyed_digest(key, as_bytes(bits_to_string(id))));
}

}  // namespace

IdentityBits identity_from_string(std::string_view text, std::size_t n) {
  if (n == 0) throw std::invalid_argument("identity length must be >= 1");
  Rng xof(digest("qibe.identity", as_bytes(text)));
  IdentityBits out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(xof.next_u64() & 1U);
  return out;
}

KeyPair qkeygen(const SchemeParams& params, KeyBackend backend, Rng& rng) {
  HashConfig config{backend, {}};
  if (backend == KeyBackend::basis) {
    Trapdoor td = trapgen(params, rng);
    config.public_seed = rng.fresh_seed();
    return {MasterPublicKey{params, std::move(td.a), config}, MasterSecretKey{BasisSecret{std::move(td.basis)}}};
  }
  ZqMatrix a(params.q, params.n, params.m);
  for (std::size_t r = 0; r < params.n; ++r)
    for (std::size_t c = 0; c < params.m; ++c) a.set(r, c, static_cast<std::int64_t>(rng.uniform_below(params.q)));
  config.public_seed = rng.fresh_seed();
  const Seed secret = rng.fresh_seed();
  return {MasterPublicKey{params, std::move(a), config}, MasterSecretKey{OracleKeySecret{secret}}};
}

ZqMatrix hash_id(const MasterPublicKey& mpk, const IdentityBits& id) {
  require_id(mpk, id);
  if (mpk.hash_config.backend != KeyBackend::basis)
    throw std::invalid_argument("hash_id: the oracle_key backend needs the master secret key");
  const auto& p = mpk.params;
  Rng xof(keyed_digest(mpk.hash_config.public_seed, as_bytes("qibe.hash:" + bits_to_string(id))));
  ZqMatrix u(p.q, p.n, p.n);
  for (std::size_t r = 0; r < p.n; ++r)
    for (std::size_t c = 0; c < p.n; ++c) u.set(r, c, static_cast<std::int64_t>(xof.uniform_below(p.q)));
  return u;
}

ZqMatrix hash_id(const MasterPublicKey& mpk, const MasterSecretKey& msk, const IdentityBits& id) {
  require_id(mpk, id);
  if (msk.backend() != mpk.hash_config.backend) throw std::invalid_argument("hash_id: msk/mpk backend mismatch");
  if (const auto* ok = std::get_if<OracleKeySecret>(&msk.material)) {
    Rng stream = oracle_stream(*ok, id);
    return keyfirst_pair(mpk.a, mpk.params.sigma, mpk.params.n, stream).first;
  }
  return hash_id(mpk, id);
}

IdentityKey qextract(const MasterPublicKey& mpk, const MasterSecretKey& msk, const IdentityBits& id) {
  require_id(mpk, id);
  if (msk.backend() != mpk.hash_config.backend) throw std::invalid_argument("qextract: msk/mpk backend mismatch");
  if (const auto* ok = std::get_if<OracleKeySecret>(&msk.material)) {
    Rng stream = oracle_stream(*ok, id);
    return IdentityKey{id, keyfirst_pair(mpk.a, mpk.params.sigma, mpk.params.n, stream).second};
  }
  const auto& secret = std::get<BasisSecret>(msk.material);
  const ZqMatrix u = hash_id(mpk, id);
  const PreimageSampler sampler(mpk.a, secret.basis);
  Rng stream = extraction_stream(secret, id);
  IntMatrix r(mpk.params.m, mpk.params.n);
  for (std::size_t i = 0; i < mpk.params.n; ++i) r.set_column(i, sampler.sample(u.column(i), mpk.params.sigma, stream));
  return IdentityKey{id, std::move(r)};
}

bool verify_identity_key(const MasterPublicKey& mpk, const ZqMatrix& u, const IdentityKey& sk) {
  const auto& p = mpk.params;
  if (sk.id.size() != p.n || sk.r.rows() != p.m || sk.r.cols() != p.n) return false;
  if (!(multiply(mpk.a, sk.r) == u)) return false;
  const double bound = short_vector_bound(p.sigma, p.m);
  for (std::size_t i = 0; i < p.n; ++i)
    if (euclidean_norm(sk.r.column(i)) > bound) return false;
  return true;
}

EncryptionRandomness sample_encryption_randomness(const SchemeParams& params, Rng& rng) {
  EncryptionRandomness out;
  out.seed = rng.fresh_seed();
  Rng stream(out.seed);
  out.s = ZqVector(params.q, params.n);
  for (std::size_t i = 0; i < params.n; ++i) out.s.set(i, static_cast<std::int64_t>(stream.uniform_below(params.q)));
  out.e0 = sample_dgauss_vec(params.n, params.sigma, stream);
  out.e = sample_dgauss_vec(params.m, params.sigma, stream);
  return out;
}

std::int64_t register_value(const sim::BasisKey& key, std::size_t i, unsigned bit_length) {
  return static_cast<std::int64_t>(key.value(static_cast<revcirc::Qubit>(i * bit_length), bit_length));
}

void validate(const MasterPublicKey& mpk, const Ciphertext& ct) {
  const auto& p = mpk.params;
  if (ct.c1.size() != p.m) throw std::invalid_argument("malformed ciphertext: c1 must have m entries");
  if (ct.c1.modulus() != p.q) throw std::invalid_argument("malformed ciphertext: c1 modulus differs from q");
  if (ct.psi.width() != p.n * p.bit_length)
    throw std::invalid_argument("malformed ciphertext: psi width must be n·L");
  for (const auto& [key, amp] : ct.psi.branches())
    for (std::size_t i = 0; i < p.n; ++i)
      if (register_value(key, i, p.bit_length) >= p.q)
        throw std::invalid_argument("malformed ciphertext: register value >= q");
}

Ciphertext qencrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const sim::SparseState& plaintext, Rng& rng) {
  return qencrypt(mpk, u, plaintext, sample_encryption_randomness(mpk.params, rng));
}

Ciphertext qencrypt(const MasterPublicKey& mpk, const ZqMatrix& u, const sim::SparseState& plaintext,
                    const EncryptionRandomness& randomness) {
  const auto& p = mpk.params;
  if (plaintext.width() != p.n)
    throw std::invalid_argument("plaintext must have exactly n = " + std::to_string(p.n) + " qubits");
  if (u.rows() != p.n || u.cols() != p.n) throw std::invalid_argument("U must be n×n");

  // x = Uᵀs + e0, c1 = Aᵀs + e.
  const ZqVector x = add(transpose_multiply(u, randomness.s), randomness.e0);
  const ZqVector c1 = add(transpose_multiply(mpk.a, randomness.s), randomness.e);

  const revcirc::Circuit circuit = revcirc::build_encrypt_circuit(x.values(), p.q);
  std::vector<revcirc::Qubit> message, work;
  for (std::size_t i = 0; i < p.n; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    message.push_back(circuit.reg("message" + idx)[0]);
    const auto w = circuit.reg("work" + idx).qubits();
    work.insert(work.end(), w.begin(), w.end());
  }
  const sim::SparseState out = sim::apply(circuit, sim::embed(plaintext, circuit.width(), message));

  for (const auto& r : circuit.registers()) {
    if (r.name.rfind("work[", 0) == 0) continue;
    if (!sim::is_register_zero(out, r))
      throw std::logic_error("qencrypt: register " + r.name + " left nonzero (circuit bug)");
  }
  return Ciphertext{c1, sim::extract(out, work), fingerprint(mpk)};
}

sim::SparseState qdecrypt(const MasterPublicKey& mpk, const IdentityKey& sk, const Ciphertext& ct) {
  validate(mpk, ct);
  const auto& p = mpk.params;
  if (sk.r.rows() != p.m || sk.r.cols() != p.n) throw std::invalid_argument("identity key has the wrong shape");
  const ZqVector y = transpose_multiply(sk.r, ct.c1);

  const revcirc::Circuit circuit = revcirc::build_decrypt_circuit(y.values(), p.q);
  std::vector<revcirc::Qubit> cipher, message;
  for (std::size_t i = 0; i < p.n; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    const auto c = circuit.reg("cipher" + idx).qubits();
    cipher.insert(cipher.end(), c.begin(), c.end());
    message.push_back(circuit.reg("message" + idx)[0]);
  }
  const sim::SparseState out = sim::apply(circuit, sim::embed(ct.psi, circuit.width(), cipher));

  for (const auto& r : circuit.registers()) {
    if (r.name.rfind("cipher[", 0) == 0 || r.name.rfind("message[", 0) == 0) continue;
    if (!sim::is_register_zero(out, r))
      throw DecryptionError("decryption failed: register " + r.name + " is not |0>");
  }
  try {
    return sim::extract(out, message);
  } catch (const std::runtime_error&) {
    throw DecryptionError("decryption failed: ciphertext register remains entangled with the message");
  }
}

}  // namespace qibe
