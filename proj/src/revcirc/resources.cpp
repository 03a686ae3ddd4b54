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

#include "qibe/revcirc/resources.hpp"

#include <algorithm>
#include <stdexcept>

#include "qibe/revcirc/builders.hpp"

namespace qibe::revcirc {

const char* to_string(LoweredKind kind) {
  switch (kind) {
    case LoweredKind::H: return "H";
    case LoweredKind::S: return "S";
    case LoweredKind::T: return "T";
    case LoweredKind::Tdg: return "Tdg";
    case LoweredKind::CNOT: return "CNOT";
    case LoweredKind::X: return "X";
  }
  return "?";
}

void append_toffoli(std::vector<LoweredGate>& out, Qubit a, Qubit b, Qubit t) {
  using K = LoweredKind;
  // Textbook network; the controlled-phase tail uses S on the second control
  // in place of one T, giving 7 T/Tdg and one S.
  out.push_back({K::H, {t}});
  out.push_back({K::CNOT, {b, t}});
  out.push_back({K::Tdg, {t}});
  out.push_back({K::CNOT, {a, t}});
  out.push_back({K::T, {t}});
  out.push_back({K::CNOT, {b, t}});
  out.push_back({K::Tdg, {t}});
  out.push_back({K::CNOT, {a, t}});
  out.push_back({K::Tdg, {b}});
  out.push_back({K::T, {t}});
  out.push_back({K::CNOT, {a, b}});
  out.push_back({K::H, {t}});
  out.push_back({K::Tdg, {b}});
  out.push_back({K::CNOT, {a, b}});
  out.push_back({K::T, {a}});
  out.push_back({K::S, {b}});
}

LoweredCircuit lower_clifford_t(const Circuit& c) {
  std::size_t pool = 0;
  for (const auto& g : c.gates())
    if (g.kind == GateKind::MCX) pool = std::max(pool, g.controls.size() - 2);

  LoweredCircuit out;
  out.width = c.width() + static_cast<Qubit>(pool);
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::X: out.gates.push_back({LoweredKind::X, {g.target}}); break;
      case GateKind::CX: out.gates.push_back({LoweredKind::CNOT, {g.controls[0], g.target}}); break;
      case GateKind::CCX: append_toffoli(out.gates, g.controls[0], g.controls[1], g.target); break;
      case GateKind::MCX: {
        const auto l = static_cast<unsigned>(g.controls.size());
        const Circuit mcx = build_mcx(l);
        std::vector<Qubit> map = g.controls;
        map.push_back(g.target);
        for (unsigned i = 0; i + 2 < l; ++i) map.push_back(c.width() + i);
        for (const auto& t : mcx.gates())
          append_toffoli(out.gates, map[t.controls[0]], map[t.controls[1]], map[t.target]);
        break;
      }
    }
  }
  return out;
}

ResourceReport count_resources(const LoweredCircuit& c) {
  ResourceReport r;
  r.qubits = c.width;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case LoweredKind::H: ++r.h; break;
      case LoweredKind::S: ++r.s; break;
      case LoweredKind::T:
      case LoweredKind::Tdg: ++r.t; break;
      case LoweredKind::CNOT: ++r.cnot; break;
      case LoweredKind::X: ++r.x; break;
    }
  }
  return r;
}

ResourceReport count_resources(const Circuit& c, bool lowered) {
  std::uint64_t ccx = 0, mcx = 0, cx = 0, x = 0;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::X: ++x; break;
      case GateKind::CX: ++cx; break;
      case GateKind::CCX: ++ccx; break;
      case GateKind::MCX: ++mcx; break;
    }
  }
  ResourceReport r;
  if (lowered) {
    r = count_resources(lower_clifford_t(c));
  } else {
    r.cnot = cx;
    r.x = x;
    r.qubits = c.width();
  }
  r.ccx = ccx;
  r.mcx = mcx;
  return r;
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "encrypt") return Algorithm::encrypt;
  if (s == "decrypt") return Algorithm::decrypt;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected encrypt or decrypt)");
}

const char* to_string(Algorithm alg) {
  return alg == Algorithm::encrypt ? "encrypt" : "decrypt";
}

ResourceReport formula_resources(std::uint64_t n, std::int64_t q, Algorithm alg) {
  if (n < 1) throw std::invalid_argument("formula_resources: n must be >= 1");
  if (q < 3) throw std::invalid_argument("formula_resources: q must be >= 3");
  std::uint64_t L = 0;
  for (auto v = q; v > 0; v >>= 1) ++L;

  ResourceReport r;
  if (alg == Algorithm::encrypt) {
    const std::uint64_t k = 10 * L - 3;
    r.h = 2 * n * k;
    r.s = n * k;
    r.t = 7 * n * k;
    r.cnot = n * (151 * L - 24) / 2;  // n(75.5L - 12), floored
    r.qubits = n * (4 * L + 4);
  } else {
    const std::uint64_t k = 34 * L + 4;
    r.h = 2 * n * k;
    r.s = n * k;
    r.t = 7 * n * k;
    r.cnot = n * (269 * L + 63);
    r.qubits = n * (6 * L + 4);
  }
  return r;
}

nlohmann::json to_json(const ResourceReport& r) {
  nlohmann::json j = {{"h", r.h}, {"s", r.s}, {"t", r.t}, {"cnot", r.cnot}, {"x", r.x}, {"qubits", r.qubits}};
  if (r.ccx) j["ccx"] = *r.ccx;
  if (r.mcx) j["mcx"] = *r.mcx;
  return j;
}

}  // namespace qibe::revcirc
