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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qibe/revcirc/circuit.hpp"

namespace qibe::sim {

using revcirc::Qubit;
using Amplitude = std::complex<double>;

/// A computational-basis label over `width` qubits, packed 64 per word.
/// Qubit 0 is the least significant bit.
class BasisKey {
 public:
  BasisKey() = default;
  explicit BasisKey(Qubit width) : width_(width), words_((width + 63) / 64, 0) {}

  Qubit width() const { return width_; }
  bool get(Qubit i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(Qubit i, bool v);
  void flip(Qubit i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  // Reads / writes `size` <= 64 bits starting at `offset`.
  std::uint64_t value(Qubit offset, Qubit size) const;
  void set_value(Qubit offset, Qubit size, std::uint64_t v);

  bool is_zero(Qubit offset, Qubit size) const;

  // Most significant qubit first: width 3, value 5 -> "101".
  std::string to_string() const;
  static BasisKey from_string(const std::string& bits);

  auto operator<=>(const BasisKey&) const = default;
  bool operator==(const BasisKey&) const = default;

 private:
  Qubit width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Finite superposition of basis states. Branches are kept sorted by key with
/// no zero amplitudes and no duplicates.
class SparseState {
 public:
  using Branch = std::pair<BasisKey, Amplitude>;

  SparseState() = default;

  Qubit width() const { return width_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  double norm_squared() const;

  // Builds from arbitrary branches; checks widths, duplicates and norm
  // (|norm^2 - 1| <= tolerance). Throws std::invalid_argument.
  static SparseState from_branches(Qubit width, std::vector<Branch> branches, double tolerance = 1e-6);

  bool operator==(const SparseState&) const = default;

 private:
  Qubit width_ = 0;
  std::vector<Branch> branches_;
};

// Single branch with amplitude 1. Throws if `value` needs more than `width` bits.
SparseState from_basis(Qubit width, std::uint64_t value);
SparseState from_basis(const BasisKey& key);

// Entries are (MSB-first bit string, amplitude); norm must be 1 within 1e-6.
SparseState from_superposition(Qubit width, const std::vector<std::pair<std::string, Amplitude>>& entries);

/// Runs an X-family circuit branch by branch. Widths must match.
SparseState apply(const revcirc::Circuit& c, const SparseState& s);

bool is_register_zero(const SparseState& s, const revcirc::Register& r);
bool is_register_zero(const SparseState& s, Qubit offset, Qubit size);

/// State of the listed qubits (qubit j of the result is positions[j]). Every
/// other qubit must hold the same value on all branches, otherwise the
/// selection is entangled with the rest and std::runtime_error is thrown.
SparseState extract(const SparseState& s, std::span<const Qubit> positions);
SparseState project_register(const SparseState& s, const revcirc::Register& r);

/// Embeds `s` into `width` qubits, qubit j going to positions[j]; every other
/// qubit is |0>.
SparseState embed(const SparseState& s, Qubit width, std::span<const Qubit> positions);

/// |<a|b>|^2. Throws on width mismatch.
double fidelity(const SparseState& a, const SparseState& b);

nlohmann::json to_json(const SparseState& s);
SparseState state_from_json(const nlohmann::json& j);

}  // namespace qibe::sim
