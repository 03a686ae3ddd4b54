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

#include "qibe/cli/frame.hpp"

#include <cerrno>
#include <system_error>

#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

namespace qibe::cli {

namespace {

constexpr std::size_t kHeader = 5;

FrameType checked_type(std::uint8_t byte) {
  switch (byte) {
    case 0x01:
    case 0x02:
    case 0x03:
    case 0x04:
      return static_cast<FrameType>(byte);
    default:
      throw FrameError("unknown frame type " + std::to_string(byte));
  }
}

std::uint32_t read_length(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

// Reads exactly n bytes; returns how many arrived before EOF.
std::size_t read_exact(int fd, std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, buf + got, n - got, 0);
    if (r == 0) break;
    if (r < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) throw FrameError("timed out waiting for peer");
      throw std::system_error(errno, std::generic_category(), "recv");
    }
    got += static_cast<std::size_t>(r);
  }
  return got;
}

}  // namespace

const char* to_string(FrameType type) {
  switch (type) {
    case FrameType::hello: return "hello";
    case FrameType::identity: return "identity";
    case FrameType::ciphertext: return "ciphertext";
    case FrameType::ack: return "ack";
  }
  return "?";
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) throw FrameError("payload too large");
  const auto len = static_cast<std::uint32_t>(frame.payload.size());
  std::vector<std::uint8_t> out;
  out.reserve(kHeader + len);
  out.push_back(static_cast<std::uint8_t>(len >> 24));
  out.push_back(static_cast<std::uint8_t>(len >> 16));
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.push_back(static_cast<std::uint8_t>(frame.type));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeader) throw FrameError("truncated frame header");
  const std::uint32_t len = read_length(bytes.data());
  if (len > kMaxPayload) throw FrameError("frame length exceeds limit");
  const FrameType type = checked_type(bytes[4]);
  if (bytes.size() - kHeader < len) throw FrameError("truncated frame payload");
  if (bytes.size() - kHeader > len) throw FrameError("trailing bytes after frame");
  return Frame{type, std::string(bytes.begin() + kHeader, bytes.end())};
}

void write_frame(int fd, const Frame& frame) {
  const auto bytes = encode_frame(frame);
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t r = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw std::system_error(errno, std::generic_category(), "send");
    }
    sent += static_cast<std::size_t>(r);
  }
}

Frame read_frame(int fd) {
  std::uint8_t header[kHeader];
  const std::size_t got = read_exact(fd, header, kHeader);
  if (got == 0) throw FrameError("connection closed before a frame arrived");
  if (got < kHeader) throw FrameError("truncated frame header");
  const std::uint32_t len = read_length(header);
  if (len > kMaxPayload) throw FrameError("frame length exceeds limit");
  const FrameType type = checked_type(header[4]);
  std::string payload(len, '\0');
  if (read_exact(fd, reinterpret_cast<std::uint8_t*>(payload.data()), len) < len)
    throw FrameError("truncated frame payload");
  return Frame{type, std::move(payload)};
}

}  // namespace qibe::cli
