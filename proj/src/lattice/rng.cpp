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

#include "qibe/lattice/rng.hpp"

#include <sodium.h>

#include <stdexcept>
#include <vector>

namespace qibe {

namespace {

Seed seed_from_u64(std::uint64_t seed) {
  std::array<std::uint8_t, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return digest("qibe.rng.seed", bytes);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(seed_from_u64(seed)) {}

Rng::Rng(const Seed& key) : key_(key) {}

void Rng::refill() {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  static const std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  buffer_.fill(0);
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(), buffer_.size(),
                                     nonce.data(), block_counter_++, key_.data());
  used_ = 0;
}

std::uint64_t Rng::next_u64() {
  if (used_ + 8 > buffer_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buffer_[used_ + i]) << (8 * i);
  used_ += 8;
  return v;
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());
  return lo + static_cast<std::int64_t>(uniform_below(span));
}

Rng Rng::split(std::string_view label) {
  std::vector<std::uint8_t> msg(label.begin(), label.end());
  for (int i = 0; i < 8; ++i) msg.push_back(static_cast<std::uint8_t>(split_counter_ >> (8 * i)));
  ++split_counter_;
  return Rng(keyed_digest(key_, msg));
}

Seed Rng::fresh_seed() {
  Seed out{};
  for (std::size_t i = 0; i < out.size(); i += 8) {
    const std::uint64_t v = next_u64();
    for (std::size_t b = 0; b < 8; ++b) out[i + b] = static_cast<std::uint8_t>(v >> (8 * b));
  }
  return out;
}

}  // namespace qibe
