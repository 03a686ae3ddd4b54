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

#include "qibe/lattice/params.hpp"

#include <cmath>
#include <stdexcept>

namespace qibe {

std::string_view to_string(KeyBackend backend) {
  return backend == KeyBackend::basis ? "basis" : "oracle_key";
}

KeyBackend backend_from_string(std::string_view name) {
  if (name == "oracle_key") return KeyBackend::oracle_key;
  if (name == "basis") return KeyBackend::basis;
  throw std::invalid_argument("invalid parameter: unknown backend '" + std::string(name) + "'");
}

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::int64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

unsigned bit_length(std::int64_t q) {
  unsigned bits = 0;
  while (q > 0) {
    ++bits;
    q >>= 1;
  }
  return bits;
}

SchemeParams SchemeParams::make(std::size_t n, std::size_t m, std::int64_t q, double sigma) {
  if (n < 1) throw std::invalid_argument("invalid parameter: n must be >= 1");
  if (m < 1) throw std::invalid_argument("invalid parameter: m must be >= 1");
  if (q < 3 || !is_prime(q)) throw std::invalid_argument("invalid parameter: q must be a prime >= 3");
  // Circuit registers are indexed with 32-bit values and branch values fit in 62 bits.
  if (q >= (std::int64_t{1} << 30)) throw std::invalid_argument("invalid parameter: q too large");
  if (!(sigma > 0) || !std::isfinite(sigma))
    throw std::invalid_argument("invalid parameter: sigma must be > 0");
  return SchemeParams{n, m, q, sigma, qibe::bit_length(q)};
}

void require_basis_dimension(const SchemeParams& params) {
  const std::size_t need = 6 * params.n * params.bit_length;
  if (params.m < need) {
    throw std::invalid_argument("invalid parameter: basis backend needs m >= 6·n·ceil(log2 q) = " +
                                std::to_string(need));
  }
}

double basis_sigma(std::size_t n, std::size_t m, std::int64_t q) {
  const double gs_bound =
      kTrapdoorQualityConstant * std::sqrt(static_cast<double>(n) * bit_length(q));
  return std::ceil(gs_bound * std::sqrt(std::log2(static_cast<double>(m))));
}

std::optional<Preset> find_preset(std::string_view name) {
  if (name == "toy") return Preset{"toy", SchemeParams::make(4, 64, 12289, 4.0), KeyBackend::oracle_key};
  if (name == "tiny-basis") {
    return Preset{"tiny-basis", SchemeParams::make(2, 84, 101, basis_sigma(2, 84, 101)),
                  KeyBackend::basis};
  }
  return std::nullopt;
}

}  // namespace qibe
