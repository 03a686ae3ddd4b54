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

#include "qibe/sim/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qibe::sim {

void BasisKey::set(Qubit i, bool v) {
  const auto mask = std::uint64_t{1} << (i % 64);
  if (v) words_[i / 64] |= mask;
  else words_[i / 64] &= ~mask;
}

std::uint64_t BasisKey::value(Qubit offset, Qubit size) const {
  if (size > 64) throw std::invalid_argument("BasisKey::value: at most 64 bits");
  if (offset + size > width_) throw std::out_of_range("BasisKey::value: range exceeds width");
  std::uint64_t v = 0;
  for (Qubit i = 0; i < size; ++i) v |= static_cast<std::uint64_t>(get(offset + i)) << i;
  return v;
}

void BasisKey::set_value(Qubit offset, Qubit size, std::uint64_t v) {
  if (size > 64) throw std::invalid_argument("BasisKey::set_value: at most 64 bits");
  if (offset + size > width_) throw std::out_of_range("BasisKey::set_value: range exceeds width");
  if (size < 64 && (v >> size)) throw std::invalid_argument("BasisKey::set_value: value does not fit");
  for (Qubit i = 0; i < size; ++i) set(offset + i, (v >> i) & 1U);
}

bool BasisKey::is_zero(Qubit offset, Qubit size) const {
  if (offset + size > width_) throw std::out_of_range("BasisKey::is_zero: range exceeds width");
  for (Qubit i = 0; i < size; ++i)
    if (get(offset + i)) return false;
  return true;
}

std::string BasisKey::to_string() const {
  std::string out(width_, '0');
  for (Qubit i = 0; i < width_; ++i)
    if (get(i)) out[width_ - 1 - i] = '1';
  return out;
}

BasisKey BasisKey::from_string(const std::string& bits) {
  BasisKey k(static_cast<Qubit>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char ch = bits[bits.size() - 1 - i];
    if (ch != '0' && ch != '1') throw std::invalid_argument("basis string must contain only 0 and 1");
    k.set(static_cast<Qubit>(i), ch == '1');
  }
  return k;
}

double SparseState::norm_squared() const {
  double total = 0;
  for (const auto& [k, a] : branches_) total += std::norm(a);
  return total;
}

SparseState SparseState::from_branches(Qubit width, std::vector<Branch> branches, double tolerance) {
  if (branches.empty()) throw std::invalid_argument("state needs at least one branch");
  for (const auto& [k, a] : branches) {
    if (k.width() != width) throw std::invalid_argument("branch width does not match state width");
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw std::invalid_argument("non-finite amplitude");
  }
  std::sort(branches.begin(), branches.end(), [](const Branch& x, const Branch& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < branches.size(); ++i)
    if (branches[i].first == branches[i - 1].first)
      throw std::invalid_argument("duplicate basis key " + branches[i].first.to_string());
  std::erase_if(branches, [](const Branch& b) { return b.second == Amplitude(0); });
  SparseState s;
  s.width_ = width;
  s.branches_ = std::move(branches);
  const double n2 = s.norm_squared();
  if (std::abs(n2 - 1.0) > tolerance)
    throw std::invalid_argument("state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  return s;
}

SparseState from_basis(Qubit width, std::uint64_t value) {
  if (width < 64 && (value >> width)) throw std::invalid_argument("from_basis: value does not fit in width");
  BasisKey k(width);
  for (Qubit i = 0; i < width && i < 64; ++i) k.set(i, (value >> i) & 1U);
  return SparseState::from_branches(width, {{k, 1.0}});
}

SparseState from_basis(const BasisKey& key) {
  return SparseState::from_branches(key.width(), {{key, 1.0}});
}

SparseState from_superposition(Qubit width, const std::vector<std::pair<std::string, Amplitude>>& entries) {
  std::vector<SparseState::Branch> branches;
  branches.reserve(entries.size());
  for (const auto& [bits, amp] : entries) {
    if (bits.size() != width) throw std::invalid_argument("basis string '" + bits + "' has the wrong width");
    branches.emplace_back(BasisKey::from_string(bits), amp);
  }
  return SparseState::from_branches(width, std::move(branches));
}

SparseState apply(const revcirc::Circuit& c, const SparseState& s) {
  if (c.width() != s.width())
    throw std::invalid_argument("apply: circuit width " + std::to_string(c.width()) + " != state width " +
                                std::to_string(s.width()));
  std::vector<SparseState::Branch> out = s.branches();
  for (auto& [key, amp] : out) {
    for (const auto& g : c.gates()) {
      bool fire = true;
      for (Qubit q : g.controls)
        if (!key.get(q)) {
          fire = false;
          break;
        }
      if (fire) key.flip(g.target);
    }
  }
  // A permutation of keys: norm is untouched, tolerance only guards misuse.
  return SparseState::from_branches(s.width(), std::move(out), 1e-6);
}

bool is_register_zero(const SparseState& s, Qubit offset, Qubit size) {
  if (offset + size > s.width()) throw std::out_of_range("register exceeds state width");
  return std::all_of(s.branches().begin(), s.branches().end(),
                     [&](const auto& b) { return b.first.is_zero(offset, size); });
}

bool is_register_zero(const SparseState& s, const revcirc::Register& r) {
  return is_register_zero(s, r.offset, r.size);
}

SparseState extract(const SparseState& s, std::span<const Qubit> positions) {
  std::vector<bool> selected(s.width(), false);
  for (Qubit p : positions) {
    if (p >= s.width()) throw std::out_of_range("extract: position beyond state width");
    if (selected[p]) throw std::invalid_argument("extract: repeated position");
    selected[p] = true;
  }
  const BasisKey& first = s.branches().front().first;
  std::vector<SparseState::Branch> out;
  out.reserve(s.size());
  for (const auto& [key, amp] : s.branches()) {
    for (Qubit i = 0; i < s.width(); ++i)
      if (!selected[i] && key.get(i) != first.get(i))
        throw std::runtime_error("extract: remaining qubits differ across branches (entangled)");
    BasisKey sub(static_cast<Qubit>(positions.size()));
    for (std::size_t j = 0; j < positions.size(); ++j) sub.set(static_cast<Qubit>(j), key.get(positions[j]));
    out.emplace_back(std::move(sub), amp);
  }
  return SparseState::from_branches(static_cast<Qubit>(positions.size()), std::move(out));
}

SparseState project_register(const SparseState& s, const revcirc::Register& r) {
  return extract(s, r.qubits());
}

SparseState embed(const SparseState& s, Qubit width, std::span<const Qubit> positions) {
  if (positions.size() != s.width()) throw std::invalid_argument("embed: need one position per qubit");
  std::vector<bool> used(width, false);
  for (Qubit p : positions) {
    if (p >= width) throw std::out_of_range("embed: position beyond target width");
    if (used[p]) throw std::invalid_argument("embed: repeated position");
    used[p] = true;
  }
  std::vector<SparseState::Branch> out;
  out.reserve(s.size());
  for (const auto& [key, amp] : s.branches()) {
    BasisKey big(width);
    for (Qubit j = 0; j < s.width(); ++j) big.set(positions[j], key.get(j));
    out.emplace_back(std::move(big), amp);
  }
  return SparseState::from_branches(width, std::move(out));
}

double fidelity(const SparseState& a, const SparseState& b) {
  if (a.width() != b.width()) throw std::invalid_argument("fidelity: width mismatch");
  Amplitude inner = 0;
  auto i = a.branches().begin();
  auto j = b.branches().begin();
  // Both sides are sorted; walk them together.
  while (i != a.branches().end() && j != b.branches().end()) {
    if (i->first < j->first) ++i;
    else if (j->first < i->first) ++j;
    else {
      inner += std::conj(i->second) * j->second;
      ++i;
      ++j;
    }
  }
  // Divide out the stored norms so rounding in user amplitudes cannot push an
  // identical pair away from exactly 1.
  return std::min(1.0, std::norm(inner) / (a.norm_squared() * b.norm_squared()));
}

nlohmann::json to_json(const SparseState& s) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& [key, amp] : s.branches())
    branches.push_back({{"bits", key.to_string()}, {"amp", {amp.real(), amp.imag()}}});
  return {{"width", s.width()}, {"branches", branches}};
}

SparseState state_from_json(const nlohmann::json& j) {
  try {
    const auto width = j.at("width").get<Qubit>();
    std::vector<std::pair<std::string, Amplitude>> entries;
    for (const auto& b : j.at("branches")) {
      const auto& amp = b.at("amp");
      if (!amp.is_array() || amp.size() != 2) throw std::invalid_argument("amp must be [re, im]");
      entries.emplace_back(b.at("bits").get<std::string>(), Amplitude(amp[0].get<double>(), amp[1].get<double>()));
    }
    return from_superposition(width, entries);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("state json: ") + e.what());
  }
}

}  // namespace qibe::sim
