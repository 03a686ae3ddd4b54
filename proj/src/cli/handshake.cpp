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

#include "qibe/cli/handshake.hpp"

#include <cerrno>
#include <cstring>
#include <system_error>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <json.hpp>

#include "qibe/cli/exit_codes.hpp"
#include "qibe/cli/frame.hpp"
#include "qibe/scheme/serialize.hpp"

namespace qibe::cli {

using nlohmann::json;

namespace {

json matrix_rows(const ZqMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.values().row(r);
    rows.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  }
  return rows;
}

ZqMatrix matrix_from_rows(const json& j, std::int64_t q, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw FrameError("U must have n rows");
  ZqMatrix u(q, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw FrameError("U must have n columns");
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = j[r][c].get<std::int64_t>();
      if (v < 0 || v >= q) throw FrameError("U entry out of range");
      u.set(r, c, v);
    }
  }
  return u;
}

json parse_payload(const Frame& f) {
  try {
    return json::parse(f.payload);
  } catch (const json::exception& e) {
    throw FrameError(std::string("frame payload is not JSON: ") + e.what());
  }
}

Frame expect(int fd, FrameType type) {
  Frame f = read_frame(fd);
  if (f.type != type && f.type != FrameType::ack)
    throw FrameError(std::string("expected ") + to_string(type) + " frame, got " + to_string(f.type));
  return f;
}

void send_json(int fd, FrameType type, const json& j) { write_frame(fd, Frame{type, j.dump()}); }

HandshakeResult fail(int code, std::string message, std::ostream& log) {
  log << "handshake: " << message << "\n";
  return HandshakeResult{code, {}, {}, std::move(message)};
}

// Ack frames carrying "error" end the session on the other side's terms.
std::string ack_error(const json& ack) {
  if (ack.contains("error")) return ack.at("error").get<std::string>();
  return {};
}

}  // namespace

std::string session_key_fingerprint(const MessageBits& key) {
  std::string text;
  for (auto b : key) text.push_back(b ? '1' : '0');
  const Seed d = digest("qibe.session", as_bytes(text));
  return to_hex(std::span<const std::uint8_t>(d.data(), 16));
}

HandshakeResult run_receiver(int fd, const ReceiverSetup& setup, std::ostream& log) {
  const auto& mpk = setup.mpk;
  try {
    const Frame hello = read_frame(fd);
    if (hello.type != FrameType::hello) throw FrameError("session must open with hello");
    parse_payload(hello);
    log << "receiver: hello received\n";

    const ZqMatrix u = multiply(mpk.a, setup.sk.r);
    send_json(fd, FrameType::identity,
              {{"id", setup.id_text},
               {"id_bits", bits_to_string(setup.sk.id)},
               {"mpk", to_json(mpk)},
               {"mpk_fingerprint", fingerprint(mpk)},
               {"u", matrix_rows(u)}});
    log << "receiver: sent identity '" << setup.id_text << "'\n";

    const Frame reply = expect(fd, FrameType::ciphertext);
    const json body = parse_payload(reply);
    if (reply.type == FrameType::ack)
      return fail(kHandshakeFailed, "handshake failed: sender aborted: " + ack_error(body), log);

    Ciphertext ct;
    try {
      ct = ciphertext_from_json(body.at("ciphertext"), mpk);
    } catch (const std::exception& e) {
      throw FrameError(e.what());
    }
    sim::SparseState state;
    try {
      state = qdecrypt(mpk, setup.sk, ct);
    } catch (const DecryptionError& e) {
      send_json(fd, FrameType::ack, {{"error", e.what()}});
      return fail(kDecryptFailure, e.what(), log);
    }
    if (state.size() != 1) {
      send_json(fd, FrameType::ack, {{"error", "session key is not a basis state"}});
      return fail(kHandshakeFailed, "handshake failed: session key is not a basis state", log);
    }
    const MessageBits key = bits_of(state.branches().front().first);
    const std::string fp = session_key_fingerprint(key);
    send_json(fd, FrameType::ack, {{"key_hash", fp}});
    log << "receiver: session key fingerprint " << fp << "\n";
    return HandshakeResult{kOk, fp, key, "established"};
  } catch (const FrameError& e) {
    return fail(kFramingError, std::string("malformed frame: ") + e.what(), log);
  } catch (const json::exception& e) {
    return fail(kFramingError, std::string("malformed frame: ") + e.what(), log);
  } catch (const std::system_error& e) {
    return fail(kFramingError, std::string("connection error: ") + e.what(), log);
  }
}

HandshakeResult run_sender(int fd, const SenderSetup& setup, Rng& rng, std::ostream& log) {
  const auto& mpk = setup.mpk;
  const auto& p = mpk.params;
  try {
    send_json(fd, FrameType::hello, {{"protocol", "qibe-handshake"}, {"version", 1}});
    const Frame id_frame = expect(fd, FrameType::identity);
    const json body = parse_payload(id_frame);
    if (id_frame.type == FrameType::ack)
      return fail(kHandshakeFailed, "handshake failed: receiver aborted: " + ack_error(body), log);

    const std::string mine = fingerprint(mpk);
    const std::string claimed = body.at("mpk_fingerprint").get<std::string>();
    MasterPublicKey theirs;
    try {
      theirs = mpk_from_json(body.at("mpk"));
    } catch (const std::invalid_argument& e) {
      throw FrameError(e.what());
    }
    if (claimed != mine || fingerprint(theirs) != mine) {
      send_json(fd, FrameType::ack, {{"error", "mpk fingerprint mismatch"}});
      return fail(kHandshakeFailed, "handshake failed: mpk fingerprint mismatch (" + claimed + " vs " + mine + ")",
                  log);
    }
    IdentityBits id;
    try {
      id = bits_from_string(body.at("id_bits").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FrameError(e.what());
    }
    if (id.size() != p.n) throw FrameError("identity has the wrong length");
    const ZqMatrix u = matrix_from_rows(body.at("u"), p.q, p.n);
    // With a public H the sender can check U itself; under oracle_key it has
    // to take the key centre's word for it.
    if (mpk.hash_config.backend == KeyBackend::basis && !(hash_id(mpk, id) == u)) {
      send_json(fd, FrameType::ack, {{"error", "U does not match H(id)"}});
      return fail(kHandshakeFailed, "handshake failed: U does not match H(id)", log);
    }
    log << "sender: receiver identity '" << body.value("id", std::string()) << "'\n";

    MessageBits key(p.n);
    for (auto& b : key) b = static_cast<std::uint8_t>(rng.next_u64() & 1U);
    const Ciphertext ct = qencrypt(mpk, u, basis_plaintext(key), rng);
    send_json(fd, FrameType::ciphertext, {{"ciphertext", to_json(ct)}});
    log << "sender: ciphertext sent\n";

    const Frame ack = read_frame(fd);
    if (ack.type != FrameType::ack) throw FrameError("expected ack frame");
    const json ack_body = parse_payload(ack);
    if (const auto err = ack_error(ack_body); !err.empty())
      return fail(kHandshakeFailed, "handshake failed: receiver reported: " + err, log);
    const std::string fp = session_key_fingerprint(key);
    if (ack_body.at("key_hash").get<std::string>() != fp)
      return fail(kHandshakeFailed, "handshake failed: session key hash mismatch", log);
    log << "sender: session key fingerprint " << fp << "\n";
    return HandshakeResult{kOk, fp, key, "established"};
  } catch (const FrameError& e) {
    return fail(kFramingError, std::string("malformed frame: ") + e.what(), log);
  } catch (const json::exception& e) {
    return fail(kFramingError, std::string("malformed frame: ") + e.what(), log);
  } catch (const std::system_error& e) {
    return fail(kFramingError, std::string("connection error: ") + e.what(), log);
  }
}

namespace {

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  const std::string h = (host == "localhost" || host.empty()) ? "127.0.0.1" : host;
  if (::inet_pton(AF_INET, h.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(h.c_str(), nullptr, &hints, &res) != 0 || !res)
    throw std::system_error(EHOSTUNREACH, std::generic_category(), "cannot resolve " + host);
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return addr;
}

[[noreturn]] void throw_errno(const char* what) { throw std::system_error(errno, std::generic_category(), what); }

}  // namespace

int listen_tcp(const std::string& host, std::uint16_t port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  const sockaddr_in addr = resolve(host, port);
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) < 0 || ::listen(fd, 1) < 0) {
    const int saved = errno;
    ::close(fd);
    throw std::system_error(saved, std::generic_category(), "bind/listen");
  }
  return fd;
}

std::uint16_t bound_port(int listen_fd) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len) < 0) throw_errno("getsockname");
  return ntohs(addr.sin_port);
}

int accept_one(int listen_fd) {
  for (;;) {
    const int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd >= 0) return fd;
    if (errno != EINTR) throw_errno("accept");
  }
}

int connect_tcp(const std::string& host, std::uint16_t port) {
  const sockaddr_in addr = resolve(host, port);
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw_errno("socket");
  if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) < 0) {
    const int saved = errno;
    ::close(fd);
    throw std::system_error(saved, std::generic_category(), "connect");
  }
  return fd;
}

void set_timeout(int fd, int seconds) {
  timeval tv{};
  tv.tv_sec = seconds;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

}  // namespace qibe::cli
