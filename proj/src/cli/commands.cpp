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

#include "qibe/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <sodium.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "qibe/cli/exit_codes.hpp"
#include "qibe/cli/frame.hpp"
#include "qibe/cli/handshake.hpp"
#include "qibe/lattice/params.hpp"
#include "qibe/revcirc/builders.hpp"
#include "qibe/revcirc/resources.hpp"
#include "qibe/scheme/classical.hpp"
#include "qibe/scheme/noise.hpp"
#include "qibe/scheme/qibe.hpp"
#include "qibe/scheme/serialize.hpp"

namespace qibe::cli {

using nlohmann::json;

namespace {

// Carries an exit code through the subcommand callbacks.
struct CommandFailure : std::runtime_error {
  CommandFailure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": not valid JSON (" + e.what() + ")");
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump() << "\n";
  if (!out) throw std::invalid_argument("error writing " + path);
}

Rng make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return Rng(*seed);
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  Seed key{};
  randombytes_buf(key.data(), key.size());
  return Rng(key);
}

json rows_json(const ZqMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.values().row(r);
    rows.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  }
  return rows;
}

ZqMatrix rows_matrix(const json& j, const SchemeParams& p) {
  if (!j.is_array() || j.size() != p.n) throw std::invalid_argument("U must be an n×n array");
  ZqMatrix u(p.q, p.n, p.n);
  for (std::size_t r = 0; r < p.n; ++r) {
    if (!j[r].is_array() || j[r].size() != p.n) throw std::invalid_argument("U must be an n×n array");
    for (std::size_t c = 0; c < p.n; ++c) {
      const auto v = j[r][c].get<std::int64_t>();
      if (v < 0 || v >= p.q) throw std::invalid_argument("U entry out of range");
      u.set(r, c, v);
    }
  }
  return u;
}

struct ParamOptions {
  std::string preset;
  std::optional<std::size_t> n, m;
  std::optional<std::int64_t> q;
  std::optional<double> sigma;
  std::string backend;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "toy or tiny-basis (default: $QIBE_PRESET, else toy)");
    cmd->add_option("--n", n, "message / identity length");
    cmd->add_option("--m", m, "lattice dimension");
    cmd->add_option("--q", q, "prime modulus");
    cmd->add_option("--sigma", sigma, "Gaussian parameter");
    cmd->add_option("--backend", backend, "oracle_key or basis (default: the preset's)");
  }

  Preset resolve() const {
    std::string name = preset;
    if (name.empty()) {
      const char* env = std::getenv("QIBE_PRESET");
      name = (env && *env) ? env : "toy";
    }
    const auto base = find_preset(name);
    if (!base) throw std::invalid_argument("invalid parameter: unknown preset '" + name + "'");
    Preset out = *base;
    const auto& p = base->params;
    out.params = SchemeParams::make(n.value_or(p.n), m.value_or(p.m), q.value_or(p.q), sigma.value_or(p.sigma));
    if (!backend.empty()) out.backend = backend_from_string(backend);
    return out;
  }
};

std::string summary(const SchemeParams& p, KeyBackend backend) {
  std::ostringstream s;
  s << "n=" << p.n << " m=" << p.m << " q=" << p.q << " L=" << p.bit_length << " sigma=" << p.sigma
    << " backend=" << to_string(backend);
  return s.str();
}

std::uint16_t parse_port(const std::string& text) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || v > 65535) throw std::invalid_argument("bad port '" + text + "'");
  return static_cast<std::uint16_t>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum identity-based encryption toolkit", "qibe"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  int code = kOk;

  // keygen
  ParamOptions keygen_params;
  std::string mpk_out = "mpk.json", msk_out = "msk.json";
  std::optional<std::uint64_t> seed;
  auto* keygen = app.add_subcommand("keygen", "generate master keys");
  keygen_params.attach(keygen);
  keygen->add_option("--mpk-out", mpk_out, "master public key file");
  keygen->add_option("--msk-out", msk_out, "master secret key file");
  keygen->add_option("--seed", seed, "deterministic seed");
  keygen->callback([&] {
    const Preset preset = keygen_params.resolve();
    Rng rng = make_rng(seed);
    const KeyPair keys = qkeygen(preset.params, preset.backend, rng);
    write_json(mpk_out, to_json(keys.mpk));
    write_json(msk_out, to_json(keys.msk));
    out << "params: " << summary(preset.params, preset.backend) << "\n";
    out << "mpk fingerprint: " << fingerprint(keys.mpk) << "\n";
  });

  // shared file options
  std::string mpk_path, msk_path, sk_path, ct_path, u_path, plaintext_path, id_text, bits;
  // One output path per subcommand so each keeps its own default.
  std::string sk_out = "sk.json", u_out = "u.json", ct_out = "ct.json", pt_out = "plaintext.json";

  auto* extract = app.add_subcommand("extract", "derive an identity key");
  extract->add_option("--mpk", mpk_path)->required();
  extract->add_option("--msk", msk_path)->required();
  extract->add_option("--id", id_text, "identity string")->required();
  extract->add_option("--out", sk_out, "identity key file");
  extract->callback([&] {
    const auto mpk = mpk_from_json(read_json(mpk_path));
    const auto msk = msk_from_json(read_json(msk_path), mpk);
    const auto id = identity_from_string(id_text, mpk.params.n);
    const IdentityKey sk = qextract(mpk, msk, id);
    if (!verify_identity_key(mpk, hash_id(mpk, msk, id), sk))
      throw CommandFailure(kContractError, "contract check failed: A·R != H(id) or R too long");
    write_json(sk_out, to_json(sk));
    out << "identity '" << id_text << "' -> " << bits_to_string(id) << ", key verified\n";
  });

  auto* hash = app.add_subcommand("hash", "evaluate H(id) and write U");
  hash->add_option("--mpk", mpk_path)->required();
  hash->add_option("--msk", msk_path, "needed for the oracle_key backend");
  hash->add_option("--id", id_text)->required();
  hash->add_option("--out", u_out);
  hash->callback([&] {
    const auto mpk = mpk_from_json(read_json(mpk_path));
    const auto id = identity_from_string(id_text, mpk.params.n);
    const ZqMatrix u = msk_path.empty() ? hash_id(mpk, id) : hash_id(mpk, msk_from_json(read_json(msk_path), mpk), id);
    write_json(u_out, {{"id_bits", bits_to_string(id)}, {"U", rows_json(u)}});
    out << "wrote U for " << bits_to_string(id) << "\n";
  });

  auto* encrypt = app.add_subcommand("encrypt", "encrypt a plaintext state");
  encrypt->add_option("--mpk", mpk_path)->required();
  encrypt->add_option("--id", id_text)->required();
  encrypt->add_option("--u", u_path, "U file from `hash` (oracle_key backend)");
  encrypt->add_option("--msk", msk_path, "evaluate H with the msk instead of --u");
  auto* pt_opt = encrypt->add_option("--plaintext", plaintext_path, "plaintext state file");
  auto* bits_opt = encrypt->add_option("--bits", bits, "basis plaintext, most significant qubit first");
  pt_opt->excludes(bits_opt);
  encrypt->add_option("--out", ct_out);
  encrypt->add_option("--seed", seed);
  encrypt->callback([&] {
    const auto mpk = mpk_from_json(read_json(mpk_path));
    const auto& p = mpk.params;
    const auto id = identity_from_string(id_text, p.n);
    ZqMatrix u;
    if (!u_path.empty()) {
      const json j = read_json(u_path);
      if (j.value("id_bits", std::string()) != bits_to_string(id))
        throw std::invalid_argument("U file was made for a different identity");
      u = rows_matrix(j.at("U"), p);
    } else if (!msk_path.empty()) {
      u = hash_id(mpk, msk_from_json(read_json(msk_path), mpk), id);
    } else {
      u = hash_id(mpk, id);
    }
    sim::SparseState plaintext;
    if (!bits.empty()) {
      if (bits.size() != p.n) throw std::invalid_argument("--bits must have exactly n characters");
      plaintext = sim::from_basis(sim::BasisKey::from_string(bits));
    } else if (!plaintext_path.empty()) {
      plaintext = plaintext_from_json(read_json(plaintext_path));
    } else {
      throw std::invalid_argument("give --plaintext or --bits");
    }
    Rng rng = make_rng(seed);
    const Ciphertext ct = qencrypt(mpk, u, plaintext, rng);
    write_json(ct_out, to_json(ct));
    out << "encrypted " << ct.psi.size() << " branch(es) over " << ct.psi.width() << " qubits\n";
  });

  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext");
  decrypt->add_option("--mpk", mpk_path)->required();
  decrypt->add_option("--sk", sk_path)->required();
  decrypt->add_option("--ct", ct_path)->required();
  decrypt->add_option("--out", pt_out);
  decrypt->callback([&] {
    const auto mpk = mpk_from_json(read_json(mpk_path));
    const auto sk = identity_key_from_json(read_json(sk_path), mpk);
    const auto ct = ciphertext_from_json(read_json(ct_path), mpk);
    const sim::SparseState state = qdecrypt(mpk, sk, ct);
    write_json(pt_out, plaintext_to_json(state));
    out << "decrypted " << state.size() << " branch(es)";
    if (state.size() == 1) out << ": " << state.branches().front().first.to_string();
    out << "\n";
  });

  std::size_t res_n = 1;
  std::int64_t res_q = 0;
  std::string alg = "encrypt", mode = "formula";
  std::int64_t res_x = 0, res_y = 0;
  auto* resources = app.add_subcommand("resources", "gate counts for the encryption/decryption circuits");
  resources->add_option("--n", res_n)->required();
  resources->add_option("--q", res_q)->required();
  resources->add_option("--alg", alg)->check(CLI::IsMember({"encrypt", "decrypt"}));
  resources->add_option("--mode", mode)->check(CLI::IsMember({"formula", "counted"}));
  resources->add_option("--x", res_x, "encryption constant for every bit (counted mode)");
  resources->add_option("--y", res_y, "decryption constant for every bit (counted mode)");
  resources->callback([&] {
    if (res_n < 1) throw std::invalid_argument("invalid parameter: n must be >= 1");
    if (res_q < 3) throw std::invalid_argument("invalid parameter: q must be >= 3");
    const auto a = revcirc::algorithm_from_string(alg);
    revcirc::ResourceReport report;
    if (mode == "formula") {
      report = revcirc::formula_resources(res_n, res_q, a);
    } else {
      const std::vector<std::int64_t> consts(res_n, a == revcirc::Algorithm::encrypt ? res_x : res_y);
      const auto circuit = a == revcirc::Algorithm::encrypt ? revcirc::build_encrypt_circuit(consts, res_q)
                                                            : revcirc::build_decrypt_circuit(consts, res_q);
      report = revcirc::count_resources(circuit, true);
    }
    json j = revcirc::to_json(report);
    j["mode"] = mode;
    j["alg"] = alg;
    out << j.dump(2) << "\n";
  });

  ParamOptions noise_params;
  std::size_t trials = 10000;
  auto* noise = app.add_subcommand("noise", "Monte Carlo decryption-noise margin for a parameter set");
  noise_params.attach(noise);
  noise->add_option("--trials", trials);
  noise->add_option("--seed", seed);
  noise->callback([&] {
    const Preset preset = noise_params.resolve();
    Rng rng = make_rng(seed);
    const auto stats = noise_margin_estimate(preset.params, trials, rng);
    out << json{{"trials", stats.trials}, {"samples", stats.samples}, {"max", stats.max}, {"p999", stats.p999},
                {"threshold", stats.threshold}, {"accepted", stats.accepted}}
               .dump(2)
        << "\n";
    if (!stats.accepted) throw CommandFailure(kContractError, "noise margin exceeds floor(q/8)");
  });

  std::optional<std::uint16_t> listen_port;
  std::string connect_to, host = "127.0.0.1", port_file;
  int timeout = 30;
  auto* handshake = app.add_subcommand("handshake", "loopback session-key handshake");
  auto* listen_opt = handshake->add_option("--listen", listen_port, "act as receiver on this port (0: any)");
  auto* connect_opt = handshake->add_option("--connect", connect_to, "act as sender, host:port");
  listen_opt->excludes(connect_opt);
  handshake->add_option("--host", host, "bind address for --listen");
  handshake->add_option("--mpk", mpk_path)->required();
  handshake->add_option("--sk", sk_path, "receiver identity key");
  handshake->add_option("--id", id_text, "receiver identity as shown to the sender");
  handshake->add_option("--port-file", port_file, "receiver writes its bound port here");
  handshake->add_option("--timeout", timeout, "socket timeout in seconds");
  handshake->add_option("--seed", seed);
  handshake->callback([&] {
    const auto mpk = mpk_from_json(read_json(mpk_path));
    HandshakeResult result;
    if (listen_port) {
      if (sk_path.empty()) throw std::invalid_argument("receiver needs --sk");
      ReceiverSetup setup{mpk, identity_key_from_json(read_json(sk_path), mpk), id_text};
      if (setup.id_text.empty()) setup.id_text = bits_to_string(setup.sk.id);
      const int lfd = listen_tcp(host, *listen_port);
      const std::uint16_t port = bound_port(lfd);
      out << "listening on " << host << ":" << port << "\n" << std::flush;
      if (!port_file.empty()) {
        const std::string tmp = port_file + ".tmp";
        std::ofstream(tmp) << port << "\n";
        std::rename(tmp.c_str(), port_file.c_str());
      }
      const int fd = accept_one(lfd);
      ::close(lfd);
      set_timeout(fd, timeout);
      result = run_receiver(fd, setup, out);
      ::close(fd);
    } else if (!connect_to.empty()) {
      const auto colon = connect_to.rfind(':');
      if (colon == std::string::npos) throw std::invalid_argument("--connect expects host:port");
      const int fd = connect_tcp(connect_to.substr(0, colon), parse_port(connect_to.substr(colon + 1)));
      set_timeout(fd, timeout);
      Rng rng = make_rng(seed);
      result = run_sender(fd, SenderSetup{mpk}, rng, out);
      ::close(fd);
    } else {
      throw std::invalid_argument("give --listen or --connect");
    }
    if (result.exit_code != kOk) throw CommandFailure(result.exit_code, result.message);
    out << "session key fingerprint: " << result.key_fingerprint << "\n";
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    code = rc == 0 ? kOk : kInputError;
  } catch (const CommandFailure& e) {
    err << "error: " << e.what() << "\n";
    code = e.code;
  } catch (const DecryptionError& e) {
    err << "error: " << e.what() << "\n";
    code = kDecryptFailure;
  } catch (const FrameError& e) {
    err << "error: malformed frame: " << e.what() << "\n";
    code = kFramingError;
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << "\n";
    code = kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    code = kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    code = kInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kContractError;
  }
  return code;
}

}  // namespace qibe::cli
