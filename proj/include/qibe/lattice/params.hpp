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
#include <string_view>

namespace qibe {

enum class KeyBackend { oracle_key, basis };

std::string_view to_string(KeyBackend backend);
// Throws std::invalid_argument for unknown names.
KeyBackend backend_from_string(std::string_view name);

/// Scheme parameters (n, m, q, sigma) plus the derived bit length L of q.
///
/// Construct through `make`, which enforces: q prime and >= 3, n >= 1,
/// m >= 1, sigma > 0. Failures throw std::invalid_argument whose message
/// starts with "invalid parameter".
struct SchemeParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::int64_t q = 0;
  double sigma = 0;
  unsigned bit_length = 0;

  static SchemeParams make(std::size_t n, std::size_t m, std::int64_t q, double sigma);

  std::int64_t half_q() const { return q / 2; }
  std::int64_t quarter_q() const { return q / 4; }

  bool operator==(const SchemeParams&) const = default;
};

bool is_prime(std::int64_t q);
// Number of bits in the binary representation of q.
unsigned bit_length(std::int64_t q);

// Throws if the basis backend's m >= 6·n·ceil(log2 q) requirement fails.
void require_basis_dimension(const SchemeParams& params);

/// Constant C in the trapdoor quality bound ||GS(T_A)|| <= C·sqrt(n·log2 q).
/// Measured for the gadget construction in trapdoor.cpp; see README.
inline constexpr double kTrapdoorQualityConstant = 10.0;

// Smallest sigma satisfying sample_d's precondition for a basis that meets
// the documented quality bound: C·sqrt(n·L)·sqrt(log2 m).
double basis_sigma(std::size_t n, std::size_t m, std::int64_t q);

struct Preset {
  std::string name;
  SchemeParams params;
  KeyBackend backend;
};

// "toy" or "tiny-basis"; nullopt for anything else.
std::optional<Preset> find_preset(std::string_view name);

}  // namespace qibe
