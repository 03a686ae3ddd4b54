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

#include "qibe/lattice/digest.hpp"

#include <sodium.h>

#include <stdexcept>

namespace qibe {

namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Seed digest(std::span<const std::uint8_t> data) {
  ensure_sodium();
  Seed out{};
  crypto_generichash(out.data(), out.size(), data.data(), data.size(), nullptr, 0);
  return out;
}

Seed keyed_digest(const Seed& key, std::span<const std::uint8_t> data) {
  ensure_sodium();
  Seed out{};
  crypto_generichash(out.data(), out.size(), data.data(), data.size(), key.data(),
                     key.size());
  return out;
}

Seed digest(std::string_view label, std::span<const std::uint8_t> data) {
  ensure_sodium();
  crypto_generichash_state state;
  crypto_generichash_init(&state, nullptr, 0, 32);
  const std::uint8_t len = static_cast<std::uint8_t>(label.size());
  crypto_generichash_update(&state, &len, 1);
  crypto_generichash_update(&state, as_bytes(label).data(), label.size());
  crypto_generichash_update(&state, data.data(), data.size());
  Seed out{};
  crypto_generichash_final(&state, out.data(), out.size());
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  ensure_sodium();
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
  out.pop_back();
  return out;
}

std::string to_base64(std::span<const std::uint8_t> bytes) {
  ensure_sodium();
  const auto variant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(bytes.size(), variant), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
  out.resize(out.find('\0'));
  return out;
}

std::vector<std::uint8_t> from_base64(std::string_view text) {
  ensure_sodium();
  std::vector<std::uint8_t> out(text.size());
  std::size_t len = 0;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len,
                        nullptr, sodium_base64_VARIANT_ORIGINAL) != 0) {
    throw std::invalid_argument("malformed base64");
  }
  out.resize(len);
  return out;
}

}  // namespace qibe
