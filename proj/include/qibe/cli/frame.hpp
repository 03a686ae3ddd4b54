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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qibe::cli {

enum class FrameType : std::uint8_t {
  hello = 0x01,
  identity = 0x02,  // id + mpk (+ U and mpk fingerprint)
  ciphertext = 0x03,
  ack = 0x04,
};

const char* to_string(FrameType type);

// Wire layout: 4-byte big-endian payload length, 1 type byte, payload (UTF-8
// JSON, exactly `length` bytes).
struct Frame {
  FrameType type;
  std::string payload;

  bool operator==(const Frame&) const = default;
};

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frames larger than this are rejected before any allocation.
inline constexpr std::uint32_t kMaxPayload = 64u << 20;

std::vector<std::uint8_t> encode_frame(const Frame& frame);

/// Decodes exactly one frame occupying all of `bytes`. Throws FrameError on
/// truncation, trailing bytes, unknown type or oversize length.
Frame decode_frame(std::span<const std::uint8_t> bytes);

// Blocking socket I/O. read_frame throws FrameError on EOF mid-frame, an
// unknown type or a timeout, and std::system_error on other socket errors.
void write_frame(int fd, const Frame& frame);
Frame read_frame(int fd);

}  // namespace qibe::cli
