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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qibe/revcirc/circuit.hpp"

namespace qibe::revcirc {

enum class LoweredKind : std::uint8_t { H, S, T, Tdg, CNOT, X };

const char* to_string(LoweredKind kind);

// One Clifford+T gate. CNOT uses {control, target}; the rest use {target}.
struct LoweredGate {
  LoweredKind kind;
  std::vector<Qubit> operands;

  bool operator==(const LoweredGate&) const = default;
};

// Output of lower_clifford_t. A distinct type on purpose: it has no invert()
// and the simulator does not accept it.
struct LoweredCircuit {
  Qubit width = 0;  // includes any ancillas added for MCX expansion
  std::vector<LoweredGate> gates;
};

// Appends the 15-gate Clifford+T Toffoli (2 H, 1 S, 7 T/Tdg, 6 CNOT).
void append_toffoli(std::vector<LoweredGate>& out, Qubit c0, Qubit c1, Qubit target);

/// CX -> CNOT, X -> X, CCX -> append_toffoli, MCX(l) -> build_mcx(l) then
/// each Toffoli lowered. MCX ancillas are a shared pool of max(l) - 2 fresh
/// qubits above the circuit's width.
LoweredCircuit lower_clifford_t(const Circuit& c);

struct ResourceReport {
  std::uint64_t h = 0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;  // T and Tdg together
  std::uint64_t cnot = 0;
  std::uint64_t x = 0;
  std::uint64_t qubits = 0;
  // Pre-lowering Toffoli / MCX counts, when the report came from a circuit.
  std::optional<std::uint64_t> ccx;
  std::optional<std::uint64_t> mcx;

  bool operator==(const ResourceReport&) const = default;
};

/// Unlowered: CX counts as cnot, Toffolis and MCX in ccx/mcx, h = s = t = 0.
/// Lowered: counts of the lower_clifford_t output, ccx/mcx kept as the raw
/// pre-lowering counts. qubits is the width in both cases (lowered width when
/// lowered).
ResourceReport count_resources(const Circuit& c, bool lowered);
ResourceReport count_resources(const LoweredCircuit& c);

enum class Algorithm : std::uint8_t { encrypt, decrypt };

Algorithm algorithm_from_string(const std::string& s);
const char* to_string(Algorithm alg);

/// Closed-form counts with L the bit length of q. The encrypt CNOT count
/// n(75.5L - 12) is floored when fractional. No X count (always 0).
ResourceReport formula_resources(std::uint64_t n, std::int64_t q, Algorithm alg);

nlohmann::json to_json(const ResourceReport& r);

}  // namespace qibe::revcirc
