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
#include <span>

#include "qibe/revcirc/circuit.hpp"

namespace qibe::revcirc {

// Register layouts are listed in qubit order; every builder allocates its
// registers from qubit 0 upwards. Values are little-endian within a register.
// Builders throw std::invalid_argument on bad widths or constants.

/// Ripple-carry adder, registers a[l], b[l+1], carry[1] (ancilla).
/// |a, b> -> |a, (a + b) mod 2^(l+1)>; with b < 2^l the top bit of b receives
/// the carry. Gate set {CX, CCX}: 2l Toffolis, 4l+1 CNOTs.
Circuit build_adder(unsigned l);

/// Adder without carry-out, registers a[l], b[l], carry[1]:
/// |a, b> -> |a, (a + b) mod 2^l>.
Circuit build_wrapping_adder(unsigned l);

/// Registers a[l], b[l], carry[1], flag[1]; flag ^= [a < b], a and b restored.
Circuit build_comparator(unsigned l);

/// Modular adder for 2^(L-1) <= q < 2^L. Registers a[L], b[L], overflow[1],
/// carry[1], k[L] (constant), flag[1]. For 0 <= a, b < q:
/// |a, b> -> |a, (a + b) mod q> with every scratch register back at |0>.
/// Inputs >= q are outside the contract and produce unspecified results.
Circuit build_mod_adder(std::int64_t q, unsigned L);

/// Registers control[1], target[l]: |k, 0> -> |k, d·k>, one CX per set bit of d.
Circuit build_ctrl_copy_const(std::uint64_t d, unsigned l);

/// Register target[l]: |v> -> |v xor d>. Self-inverse.
Circuit build_const_xor(std::uint64_t d, unsigned l);

/// Registers source[l], target[l]: |k, 0> -> |k, k> via l CX gates.
Circuit build_fanout(unsigned l);

/// Registers controls[l], target[1], ancilla[l-2] (omitted for l = 2).
/// Flips target iff all controls are 1, using max(1, 2l-3) Toffolis.
Circuit build_mcx(unsigned l);

/// Registers value[L+1] (bit L is the sign), inc[L] (constant), carry[1].
/// Sign 0: identity. Sign 1: low L bits become (2^L - low) mod 2^L, i.e. the
/// register reads 2^L + |v| for a two's-complement v with |v| < 2^(L-1). The
/// map is a permutation on all inputs.
Circuit build_abs(unsigned L);

/// One message bit of encryption. Registers message[1], work[L], xconst[L],
/// overflow[1], carry[1], k[L], flag[1], mcx_ancilla[L-2] (absent for L = 2):
/// |m>|0> -> |0>|(x + floor(q/2)·m) mod q>, all scratch back at |0>.
/// The L-controlled NOT over the X-conjugated work register is expanded with
/// build_mcx into 2L-3 Toffolis.
Circuit build_encrypt_bit(std::int64_t x, std::int64_t q);

/// One message bit of decryption. Registers cipher[L], sign[1], message[1],
/// yconst[L], overflow[1], carry[1], k[L], flag[1], half[L], inc[L],
/// quarter[L], copy[L]. With cipher = c0 < q and message = 0 on entry:
/// message <- [ |(c0 - y) mod q - floor(q/2)| < floor(q/4) ],
/// cipher <- (c0 - floor(q/2)·message) mod q, every other register |0>.
Circuit build_decrypt_bit(std::int64_t y, std::int64_t q);

/// n-bit circuits: per-bit circuits stacked with `stack`, constants xs[i] /
/// ys[i] for bit i.
Circuit build_encrypt_circuit(std::span<const std::int64_t> xs, std::int64_t q);
Circuit build_decrypt_circuit(std::span<const std::int64_t> ys, std::int64_t q);

}  // namespace qibe::revcirc
