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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace qibe::revcirc {

using Qubit = std::uint32_t;

// X-family gates. All controls are positive polarity.
enum class GateKind : std::uint8_t { X, CX, CCX, MCX };

const char* to_string(GateKind kind);

struct Gate {
  GateKind kind;
  std::vector<Qubit> controls;
  Qubit target;

  static Gate x(Qubit t) { return {GateKind::X, {}, t}; }
  static Gate cx(Qubit c, Qubit t) { return {GateKind::CX, {c}, t}; }
  static Gate ccx(Qubit c0, Qubit c1, Qubit t) { return {GateKind::CCX, {c0, c1}, t}; }
  // Picks X/CX/CCX/MCX from the number of controls.
  static Gate controlled(std::vector<Qubit> controls, Qubit t);

  bool operator==(const Gate&) const = default;
};

enum class RegisterRole : std::uint8_t {
  input,     // carries an input value
  output,    // carries the result
  ancilla,   // enters |0>, leaves |0>
  constant,  // holds a loaded classical constant mid-circuit; enters and leaves |0>
};

const char* to_string(RegisterRole role);

struct Register {
  std::string name;
  Qubit offset;
  Qubit size;
  RegisterRole role;

  Qubit operator[](Qubit i) const { return offset + i; }
  // Qubit indices offset..offset+size-1, little-endian.
  std::vector<Qubit> qubits() const;

  bool operator==(const Register&) const = default;
};

/// Ordered list of X-family gates over `width` qubits, with a table of named,
/// non-overlapping registers. Circuits are built once and then treated as
/// immutable values.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(Qubit width) : width_(width) {}

  Qubit width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<Register>& registers() const { return registers_; }

  // Allocates `size` fresh qubits at the top of the circuit.
  const Register& add_register(std::string name, Qubit size, RegisterRole role);
  // Throws std::out_of_range if absent.
  const Register& reg(std::string_view name) const;

  // Validates index range and distinctness; throws std::invalid_argument.
  void add(Gate gate);
  void x(Qubit t) { add(Gate::x(t)); }
  void cx(Qubit c, Qubit t) { add(Gate::cx(c, t)); }
  void ccx(Qubit c0, Qubit c1, Qubit t) { add(Gate::ccx(c0, c1, t)); }

  // Appends every gate of `sub`, relabelling sub-qubit j as wires[j].
  void append(const Circuit& sub, std::span<const Qubit> wires);

  bool operator==(const Circuit&) const = default;

 private:
  friend Circuit invert(const Circuit& c);

  Qubit width_ = 0;
  std::vector<Gate> gates_;
  std::vector<Register> registers_;
};

// Same gates in reverse order. Every X-family gate is self-inverse, so this is
// the inverse circuit.
Circuit invert(const Circuit& c);

// Blocks side by side: block i's qubits follow block i-1's and its registers
// are renamed "name[i]".
Circuit stack(std::span<const Circuit> blocks);

// `copies` side-by-side copies of `c`; copy i occupies qubits
// [i·width, (i+1)·width) and its registers are renamed "name[i]".
Circuit parallel(const Circuit& c, std::size_t copies);

// Concatenation of qubit lists; used to build wire maps for `append`.
std::vector<Qubit> wires(std::initializer_list<std::vector<Qubit>> parts);

nlohmann::json to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace qibe::revcirc
