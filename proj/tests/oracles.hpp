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

// Independent reference computations for the tests. Nothing here calls into
// the code under test except to run a circuit on one basis input.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qibe/revcirc/circuit.hpp"
#include "qibe/revcirc/resources.hpp"
#include "qibe/sim/sparse_state.hpp"

namespace qibe::testing {

using Inputs = std::map<std::string, std::uint64_t>;

// Loads register values, runs the circuit on that basis state, and returns
// the single output branch.
inline sim::BasisKey run_basis(const revcirc::Circuit& c, const Inputs& inputs) {
  sim::BasisKey key(c.width());
  for (const auto& [name, v] : inputs) {
    const auto& r = c.reg(name);
    key.set_value(r.offset, r.size, v);
  }
  const auto out = sim::apply(c, sim::from_basis(key));
  return out.branches().front().first;
}

inline std::uint64_t value(const sim::BasisKey& k, const revcirc::Circuit& c, const std::string& name) {
  const auto& r = c.reg(name);
  return k.value(r.offset, r.size);
}

// True iff every register outside `keep` is zero.
inline bool scratch_clear(const sim::BasisKey& k, const revcirc::Circuit& c, const std::vector<std::string>& keep) {
  for (const auto& r : c.registers()) {
    bool kept = false;
    for (const auto& n : keep) kept = kept || n == r.name;
    if (!kept && !k.is_zero(r.offset, r.size)) return false;
  }
  return true;
}

// Exact discrete Gaussian pmf exp(-pi x²/s²) normalised over [-cut, cut].
inline std::map<std::int64_t, double> gaussian_pmf(double sigma, std::int64_t cut) {
  std::map<std::int64_t, double> p;
  double total = 0;
  for (std::int64_t x = -cut; x <= cut; ++x) {
    const double w = std::exp(-M_PI * double(x) * double(x) / (sigma * sigma));
    p[x] = w;
    total += w;
  }
  for (auto& [x, w] : p) w /= total;
  return p;
}

// Dense state-vector evaluation of a lowered circuit on `width` <= 10 qubits.
// Returns the unitary as columns U[:, j] = circuit |j>.
using Dense = std::vector<std::vector<std::complex<double>>>;

inline Dense dense_unitary(const revcirc::LoweredCircuit& c) {
  const std::size_t dim = std::size_t{1} << c.width;
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> t_phase = std::polar(1.0, M_PI / 4);
  Dense cols(dim, std::vector<std::complex<double>>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<std::complex<double>> v(dim);
    v[j] = 1;
    for (const auto& g : c.gates) {
      const auto t = g.operands.back();
      const std::size_t tm = std::size_t{1} << t;
      std::vector<std::complex<double>> w = v;
      for (std::size_t i = 0; i < dim; ++i) {
        const bool bit = i & tm;
        switch (g.kind) {
          case revcirc::LoweredKind::H:
            w[i] = bit ? r * (v[i ^ tm] - v[i]) : r * (v[i] + v[i ^ tm]);
            break;
          case revcirc::LoweredKind::S: w[i] = bit ? std::complex<double>(0, 1) * v[i] : v[i]; break;
          case revcirc::LoweredKind::T: w[i] = bit ? t_phase * v[i] : v[i]; break;
          case revcirc::LoweredKind::Tdg: w[i] = bit ? std::conj(t_phase) * v[i] : v[i]; break;
          case revcirc::LoweredKind::X: w[i] = v[i ^ tm]; break;
          case revcirc::LoweredKind::CNOT: {
            const std::size_t cm = std::size_t{1} << g.operands[0];
            w[i] = (i & cm) ? v[i ^ tm] : v[i];
            break;
          }
        }
      }
      v = std::move(w);
    }
    cols[j] = std::move(v);
  }
  return cols;
}

// Random state over n qubits with `branches` distinct basis keys and complex
// Gaussian amplitudes, normalized.
template <typename Urbg>
sim::SparseState random_plaintext(std::size_t n, std::size_t branches, Urbg& g) {
  std::map<std::uint64_t, std::complex<double>> picks;
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n) - 1);
  while (picks.size() < branches) picks[pick(g)] = {nd(g), nd(g)};
  double n2 = 0;
  for (const auto& [v, a] : picks) n2 += std::norm(a);
  std::vector<sim::SparseState::Branch> out;
  for (const auto& [v, a] : picks) {
    sim::BasisKey k(static_cast<revcirc::Qubit>(n));
    k.set_value(0, static_cast<revcirc::Qubit>(n), v);
    out.emplace_back(k, a / std::sqrt(n2));
  }
  return sim::SparseState::from_branches(static_cast<revcirc::Qubit>(n), out);
}

// c0 = Uᵀs + e0 + floor(q/2)·m, straight from the definition.
inline std::vector<std::int64_t> reference_c0(const std::vector<std::vector<std::int64_t>>& u_rows,
                                              const std::vector<std::int64_t>& s,
                                              const std::vector<std::int64_t>& e0,
                                              const std::vector<std::uint8_t>& m, std::int64_t q) {
  const std::size_t n = s.size();
  std::vector<std::int64_t> c0(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t acc = e0[i] + (q / 2) * m[i];
    for (std::size_t k = 0; k < n; ++k) acc += u_rows[k][i] * s[k];
    c0[i] = ((acc % q) + q) % q;
  }
  return c0;
}

// Decision rule: b = ((c0 - y) mod q) - floor(q/2), bit = |b| < floor(q/4).
inline bool decision_rule(std::int64_t c0, std::int64_t y, std::int64_t q) {
  std::int64_t d = (c0 - y) % q;
  if (d < 0) d += q;
  const std::int64_t b = d - q / 2;
  return (b < 0 ? -b : b) < q / 4;
}

}  // namespace qibe::testing
