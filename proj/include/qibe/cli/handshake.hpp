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
#include <ostream>
#include <string>

#include "qibe/lattice/keys.hpp"
#include "qibe/lattice/rng.hpp"
#include "qibe/scheme/classical.hpp"

namespace qibe::cli {

// Receiver: holds the identity key and answers the sender's hello with its
// identity, the mpk and U = A·R.
struct ReceiverSetup {
  MasterPublicKey mpk;
  IdentityKey sk;
  std::string id_text;  // the human-readable identity, echoed to the peer
};

// Sender: holds its own copy of the mpk, which must match the receiver's.
struct SenderSetup {
  MasterPublicKey mpk;
};

struct HandshakeResult {
  int exit_code = 0;
  std::string key_fingerprint;  // set on success
  MessageBits session_key;      // set on success
  std::string message;          // human-readable outcome
};

// Hex digest identifying a session key without revealing it.
std::string session_key_fingerprint(const MessageBits& key);

/// Runs one side of the protocol over a connected stream socket. Neither
/// function throws for protocol problems; they map to exit codes (5 framing,
/// 6 handshake, 4 receiver-side decryption failure). `log` receives a short
/// transcript.
HandshakeResult run_receiver(int fd, const ReceiverSetup& setup, std::ostream& log);
HandshakeResult run_sender(int fd, const SenderSetup& setup, Rng& rng, std::ostream& log);

// Loopback helpers. Each returns a socket fd and throws std::system_error.
// `port` 0 picks an ephemeral port; bound_port reports it.
int listen_tcp(const std::string& host, std::uint16_t port);
std::uint16_t bound_port(int listen_fd);
int accept_one(int listen_fd);
int connect_tcp(const std::string& host, std::uint16_t port);
// SO_RCVTIMEO / SO_SNDTIMEO on a connected socket.
void set_timeout(int fd, int seconds);

}  // namespace qibe::cli
