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

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

#include "qibe/lattice/digest.hpp"

namespace qibe {

/// Deterministic, splittable random source backed by the ChaCha20 keystream.
///
/// Every sampling routine in the library takes an `Rng&` explicitly, so any
/// result is a pure function of its inputs and the seed. `split` derives an
/// independent child stream; the parent's own stream is unaffected except for
/// an internal split counter.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  explicit Rng(const Seed& key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01();
  // Uniform in [0, bound); bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  Rng split(std::string_view label);
  Seed fresh_seed();

  const Seed& key() const { return key_; }

 private:
  void refill();

  Seed key_;
  std::uint32_t block_counter_ = 0;
  std::uint64_t split_counter_ = 0;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t used_ = 64;
};

}  // namespace qibe
