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

#include "qibe/revcirc/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace qibe::revcirc {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::CX: return "CX";
    case GateKind::CCX: return "CCX";
    case GateKind::MCX: return "MCX";
  }
  return "?";
}

const char* to_string(RegisterRole role) {
  switch (role) {
    case RegisterRole::input: return "input";
    case RegisterRole::output: return "output";
    case RegisterRole::ancilla: return "ancilla";
    case RegisterRole::constant: return "constant";
  }
  return "?";
}

Gate Gate::controlled(std::vector<Qubit> controls, Qubit t) {
  GateKind kind = GateKind::MCX;
  switch (controls.size()) {
    case 0: kind = GateKind::X; break;
    case 1: kind = GateKind::CX; break;
    case 2: kind = GateKind::CCX; break;
    default: break;
  }
  return {kind, std::move(controls), t};
}

std::vector<Qubit> Register::qubits() const {
  std::vector<Qubit> out(size);
  for (Qubit i = 0; i < size; ++i) out[i] = offset + i;
  return out;
}

const Register& Circuit::add_register(std::string name, Qubit size, RegisterRole role) {
  for (const auto& r : registers_)
    if (r.name == name) throw std::invalid_argument("duplicate register name: " + name);
  registers_.push_back(Register{std::move(name), width_, size, role});
  width_ += size;
  return registers_.back();
}

const Register& Circuit::reg(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw std::out_of_range("no register named " + std::string(name));
}

void Circuit::add(Gate gate) {
  std::size_t expected_min = 0;
  std::size_t expected_max = 0;
  switch (gate.kind) {
    case GateKind::X: expected_min = expected_max = 0; break;
    case GateKind::CX: expected_min = expected_max = 1; break;
    case GateKind::CCX: expected_min = expected_max = 2; break;
    case GateKind::MCX: expected_min = 3; expected_max = SIZE_MAX; break;
  }
  if (gate.controls.size() < expected_min || gate.controls.size() > expected_max)
    throw std::invalid_argument(std::string("gate ") + to_string(gate.kind) + ": wrong control count");
  if (gate.target >= width_) throw std::invalid_argument("gate target out of range");
  std::vector<Qubit> seen = gate.controls;
  seen.push_back(gate.target);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("gate qubits must be distinct");
  if (seen.back() >= width_) throw std::invalid_argument("gate control out of range");
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit& sub, std::span<const Qubit> wires) {
  if (wires.size() != sub.width()) throw std::invalid_argument("append: wire map size != sub-circuit width");
  for (const auto& g : sub.gates()) {
    Gate mapped{g.kind, {}, wires[g.target]};
    mapped.controls.reserve(g.controls.size());
    for (Qubit c : g.controls) mapped.controls.push_back(wires[c]);
    add(std::move(mapped));
  }
}

Circuit invert(const Circuit& c) {
  Circuit out = c;
  std::reverse(out.gates_.begin(), out.gates_.end());
  return out;
}

Circuit stack(std::span<const Circuit> blocks) {
  Circuit out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Circuit& c = blocks[i];
    const Qubit base = out.width();
    const std::string suffix = "[" + std::to_string(i) + "]";
    if (c.registers().empty()) out.add_register("block" + suffix, c.width(), RegisterRole::input);
    for (const auto& r : c.registers()) out.add_register(r.name + suffix, r.size, r.role);
    std::vector<Qubit> map(c.width());
    for (Qubit j = 0; j < c.width(); ++j) map[j] = base + j;
    out.append(c, map);
  }
  return out;
}

Circuit parallel(const Circuit& c, std::size_t copies) {
  return stack(std::vector<Circuit>(copies, c));
}

std::vector<Qubit> wires(std::initializer_list<std::vector<Qubit>> parts) {
  std::vector<Qubit> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

nlohmann::json to_json(const Circuit& c) {
  using nlohmann::json;
  json gates = json::array();
  for (const auto& g : c.gates())
    gates.push_back({{"kind", to_string(g.kind)}, {"controls", g.controls}, {"target", g.target}});
  json regs = json::array();
  for (const auto& r : c.registers())
    regs.push_back({{"name", r.name}, {"offset", r.offset}, {"size", r.size}, {"role", to_string(r.role)}});
  return {{"width", c.width()}, {"registers", regs}, {"gates", gates}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    const auto width = j.at("width").get<Qubit>();
    Circuit c = j.at("registers").empty() ? Circuit(width) : Circuit();
    for (const auto& r : j.at("registers")) {
      const auto role_name = r.at("role").get<std::string>();
      RegisterRole role = RegisterRole::input;
      if (role_name == "output") role = RegisterRole::output;
      else if (role_name == "ancilla") role = RegisterRole::ancilla;
      else if (role_name == "constant") role = RegisterRole::constant;
      else if (role_name != "input") throw std::invalid_argument("unknown register role " + role_name);
      const auto& added = c.add_register(r.at("name").get<std::string>(), r.at("size").get<Qubit>(), role);
      if (added.offset != r.at("offset").get<Qubit>())
        throw std::invalid_argument("registers must be listed contiguously in offset order");
    }
    if (width < c.width()) throw std::invalid_argument("width smaller than register table");
    if (width > c.width()) c.add_register("unassigned", width - c.width(), RegisterRole::ancilla);
    for (const auto& g : j.at("gates"))
      c.add(Gate::controlled(g.at("controls").get<std::vector<Qubit>>(), g.at("target").get<Qubit>()));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("circuit json: ") + e.what());
  }
}

}  // namespace qibe::revcirc
