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


#include <gtest/gtest.h>

#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "loopback.hpp"
#include "qibe/cli/commands.hpp"
#include "qibe/cli/exit_codes.hpp"
#include "qibe/cli/frame.hpp"
#include "qibe/cli/handshake.hpp"
#include "qibe/lattice/params.hpp"
#include "qibe/scheme/qibe.hpp"
#include "qibe/scheme/serialize.hpp"

namespace qibe::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome qibe_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

void store(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qibe_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // toy keys plus an identity key for "alice"
  void make_keys(const std::string& seed = "1") {
    ASSERT_EQ(qibe_run({"keygen", "--preset", "toy", "--seed", seed, "--mpk-out", path("mpk.json"), "--msk-out",
                        path("msk.json")})
                  .code,
              0);
    ASSERT_EQ(qibe_run({"extract", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice", "--out",
                        path("sk.json")})
                  .code,
              0);
  }

  fs::path dir_;
};

TEST_F(Cli, KeygenWritesToyKeys) {
  const auto r = qibe_run({"keygen", "--preset", "toy", "--mpk-out", path("mpk.json"), "--msk-out", path("msk.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n=4 m=64 q=12289"), std::string::npos) << r.out;
  const auto mpk = mpk_from_json(load(path("mpk.json")));
  EXPECT_EQ(mpk.a.rows(), 4u);
  EXPECT_EQ(mpk.a.cols(), 64u);
  EXPECT_NO_THROW(msk_from_json(load(path("msk.json")), mpk));
}

TEST_F(Cli, KeygenSeedIsByteDeterministic) {
  for (const char* tag : {"a", "b"})
    ASSERT_EQ(qibe_run({"keygen", "--seed", "77", "--mpk-out", path(std::string(tag) + "_mpk.json"), "--msk-out",
                        path(std::string(tag) + "_msk.json")})
                  .code,
              0);
  EXPECT_EQ(slurp(path("a_mpk.json")), slurp(path("b_mpk.json")));
  EXPECT_EQ(slurp(path("a_msk.json")), slurp(path("b_msk.json")));
}

TEST_F(Cli, InvalidParameterIsAnInputError) {
  const auto r = qibe_run({"keygen", "--n", "0", "--mpk-out", path("m.json"), "--msk-out", path("s.json")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("invalid parameter"), std::string::npos) << r.err;
  EXPECT_EQ(qibe_run({"keygen", "--q", "100"}).code, kInputError);
  EXPECT_EQ(qibe_run({"keygen", "--preset", "huge"}).code, kInputError);
  EXPECT_EQ(qibe_run({"bogus"}).code, kInputError);
}

TEST_F(Cli, PresetFromEnvironment) {
  ::setenv("QIBE_PRESET", "tiny-basis", 1);
  const auto r = qibe_run({"keygen", "--seed", "3", "--mpk-out", path("mpk.json"), "--msk-out", path("msk.json")});
  ::unsetenv("QIBE_PRESET");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto mpk = mpk_from_json(load(path("mpk.json")));
  EXPECT_EQ(mpk.params.q, 101);
  EXPECT_EQ(mpk.hash_config.backend, KeyBackend::basis);
}

TEST_F(Cli, ExtractVerifiesAndDistinguishesIds) {
  make_keys();
  ASSERT_EQ(qibe_run({"extract", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "bob", "--out",
                      path("sk_bob.json")})
                .code,
            0);
  EXPECT_NE(slurp(path("sk.json")), slurp(path("sk_bob.json")));
  const auto mpk = mpk_from_json(load(path("mpk.json")));
  const auto msk = msk_from_json(load(path("msk.json")), mpk);
  const auto sk = identity_key_from_json(load(path("sk.json")), mpk);
  EXPECT_EQ(sk.id, identity_from_string("alice", 4));
  EXPECT_TRUE(verify_identity_key(mpk, hash_id(mpk, msk, sk.id), sk));
}

TEST_F(Cli, CorruptedMskIsAnInputError) {
  make_keys();
  std::ofstream(path("msk.json")) << "{\"backend\": \"oracle_key\", \"seed\": 12";
  EXPECT_EQ(qibe_run({"extract", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "x", "--out",
                      path("k.json")})
                .code,
            kInputError);
  store(path("msk2.json"), json{{"backend", "oracle_key"}, {"seed", "not base64!"}});
  EXPECT_EQ(qibe_run({"extract", "--mpk", path("mpk.json"), "--msk", path("msk2.json"), "--id", "x"}).code,
            kInputError);
  EXPECT_EQ(qibe_run({"extract", "--mpk", path("missing.json"), "--msk", path("msk.json"), "--id", "x"}).code,
            kInputError);
}

TEST_F(Cli, BitsRoundtripThroughFiles) {
  make_keys();
  ASSERT_EQ(qibe_run({"encrypt", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice", "--bits",
                      "1011", "--seed", "5", "--out", path("ct.json")})
                .code,
            0);
  const auto r = qibe_run({"decrypt", "--mpk", path("mpk.json"), "--sk", path("sk.json"), "--ct", path("ct.json"),
                           "--out", path("pt.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1011"), std::string::npos);
  const auto pt = load(path("pt.json"));
  EXPECT_EQ(pt.at("n"), 4);
  ASSERT_EQ(pt.at("branches").size(), 1u);
  EXPECT_EQ(pt["branches"][0]["bits"], "1011");
}

TEST_F(Cli, SuperpositionRoundtripWithHashFile) {
  make_keys();
  ASSERT_EQ(
      qibe_run({"hash", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice", "--out", path("u.json")})
          .code,
      0);
  const json plain = {{"n", 4},
                      {"branches",
                       {{{"bits", "0001"}, {"amp", {0.6, 0.0}}},
                        {{"bits", "1110"}, {"amp", {0.0, 0.48}}},
                        {{"bits", "0111"}, {"amp", {0.64, 0.0}}}}}};
  store(path("plain.json"), plain);
  ASSERT_EQ(qibe_run({"encrypt", "--mpk", path("mpk.json"), "--u", path("u.json"), "--id", "alice", "--plaintext",
                      path("plain.json"), "--out", path("ct.json")})
                .code,
            0);
  ASSERT_EQ(qibe_run({"decrypt", "--mpk", path("mpk.json"), "--sk", path("sk.json"), "--ct", path("ct.json"), "--out",
                      path("pt.json")})
                .code,
            0);
  const auto in = plaintext_from_json(plain);
  const auto out = plaintext_from_json(load(path("pt.json")));
  EXPECT_EQ(sim::fidelity(in, out), 1.0);
}

TEST_F(Cli, EncryptInputErrors) {
  make_keys();
  const std::vector<std::string> base{"encrypt", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    a.insert(a.end(), {"--out", path("ct.json")});
    return qibe_run(a).code;
  };
  EXPECT_EQ(with({"--bits", "101"}), kInputError);
  EXPECT_EQ(with({"--bits", "10x1"}), kInputError);
  store(path("bad.json"), json{{"n", 4}, {"branches", {{{"bits", "0001"}, {"amp", {1.0, 0.0}}},
                                                       {{"bits", "0010"}, {"amp", {1.0, 0.0}}}}}});
  EXPECT_EQ(with({"--plaintext", path("bad.json")}), kInputError);
  EXPECT_EQ(with({}), kInputError);
}

TEST_F(Cli, TamperedCiphertextIsMalformed) {
  make_keys();
  ASSERT_EQ(qibe_run({"encrypt", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice", "--bits",
                      "0110", "--out", path("ct.json")})
                .code,
            0);
  auto ct = load(path("ct.json"));
  std::string bits = ct["psi"]["branches"][0]["bits"];
  std::fill(bits.end() - 14, bits.end(), '1');  // 16383 >= 12289
  ct["psi"]["branches"][0]["bits"] = bits;
  store(path("bad.json"), ct);
  const auto r = qibe_run({"decrypt", "--mpk", path("mpk.json"), "--sk", path("sk.json"), "--ct", path("bad.json")});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("malformed ciphertext"), std::string::npos) << r.err;
}

TEST_F(Cli, EntangledCiphertextIsADecryptFailure) {
  make_keys();
  ASSERT_EQ(qibe_run({"encrypt", "--mpk", path("mpk.json"), "--msk", path("msk.json"), "--id", "alice", "--bits",
                      "0000", "--out", path("ct.json")})
                .code,
            0);
  // Add a second branch whose register 0 is off by one: valid values, but no
  // decryption can factor the cipher register out.
  auto ct = load(path("ct.json"));
  auto b = ct["psi"]["branches"][0];
  std::string bits = b["bits"];
  const auto v = std::stoll(bits.substr(bits.size() - 14), nullptr, 2);
  std::string low;
  for (int i = 13; i >= 0; --i) low += ((v + 1) % 12289 >> i) & 1 ? '1' : '0';
  const double h = 1.0 / std::sqrt(2.0);
  ct["psi"]["branches"] = {{{"bits", bits}, {"amp", {h, 0.0}}},
                           {{"bits", bits.substr(0, bits.size() - 14) + low}, {"amp", {h, 0.0}}}};
  store(path("ent.json"), ct);
  const auto r = qibe_run({"decrypt", "--mpk", path("mpk.json"), "--sk", path("sk.json"), "--ct", path("ent.json")});
  EXPECT_EQ(r.code, kDecryptFailure) << r.err;
}

TEST_F(Cli, ResourcesFormulaGoldenValues) {
  auto r = qibe_run({"resources", "--n", "4", "--q", "101", "--alg", "encrypt", "--mode", "formula"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("t"), 1876);
  EXPECT_EQ(j.at("qubits"), 128);
  r = qibe_run({"resources", "--n", "4", "--q", "101", "--alg", "decrypt", "--mode", "formula"});
  j = json::parse(r.out);
  EXPECT_EQ(j.at("qubits"), 184);
  EXPECT_EQ(j.at("cnot"), 7784);
  EXPECT_EQ(qibe_run({"resources", "--n", "4", "--q", "101", "--mode", "guess"}).code, kInputError);
}

TEST_F(Cli, ResourcesCountedScalesLinearly) {
  for (const char* alg : {"encrypt", "decrypt"}) {
    const auto one = json::parse(qibe_run({"resources", "--n", "1", "--q", "101", "--alg", alg, "--mode", "counted",
                                           "--x", "17", "--y", "17"})
                                     .out);
    const auto two = json::parse(qibe_run({"resources", "--n", "2", "--q", "101", "--alg", alg, "--mode", "counted",
                                           "--x", "17", "--y", "17"})
                                     .out);
    for (const char* k : {"h", "s", "t", "cnot", "x", "ccx", "qubits"}) EXPECT_EQ(two.at(k), 2 * one.at(k).get<int>()) << k;
  }
}

TEST_F(Cli, NoiseCommandReportsTheGate) {
  const auto r = qibe_run({"noise", "--preset", "toy", "--trials", "1000", "--seed", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("accepted"), std::string::npos) << r.out;
  EXPECT_EQ(qibe_run({"noise", "--preset", "tiny-basis", "--trials", "1000", "--seed", "4"}).code, kContractError);
  EXPECT_EQ(qibe_run({"noise", "--trials", "10"}).code, kInputError);
}

TEST_F(Cli, BinaryExitCodes) {
  auto status = [&](const std::string& args) {
    const int s = std::system((std::string(QIBE_BINARY) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("--help"), 0);
  EXPECT_EQ(status("keygen --n 0 --mpk-out " + path("m.json") + " --msk-out " + path("s.json")), kInputError);
  EXPECT_EQ(status("resources --n 2 --q 13 --alg encrypt"), 0);
}

// --- frames ---

TEST(Frames, EncodeLayout) {
  const auto bytes = encode_frame({FrameType::ack, "{}"});
  ASSERT_EQ(bytes.size(), 7u);
  EXPECT_EQ(bytes[0], 0);
  EXPECT_EQ(bytes[3], 2);
  EXPECT_EQ(bytes[4], 0x04);
  EXPECT_EQ(bytes[5], '{');
  EXPECT_EQ(decode_frame(bytes), (Frame{FrameType::ack, "{}"}));
}

TEST(Frames, LargePayloadLengthIsBigEndian) {
  const std::string payload(70000, 'x');
  const auto bytes = encode_frame({FrameType::ciphertext, payload});
  EXPECT_EQ(bytes[0], 0x00);
  EXPECT_EQ(bytes[1], 0x01);
  EXPECT_EQ(bytes[2], 0x11);
  EXPECT_EQ(bytes[3], 0x70);
  EXPECT_EQ(decode_frame(bytes).payload, payload);
}

TEST(Frames, MalformedInputsRejected) {
  auto bytes = encode_frame({FrameType::hello, "{\"a\":1}"});
  EXPECT_THROW(decode_frame(std::span(bytes).first(bytes.size() - 1)), FrameError);
  EXPECT_THROW(decode_frame(std::span(bytes).first(3)), FrameError);
  auto extra = bytes;
  extra.push_back('!');
  EXPECT_THROW(decode_frame(extra), FrameError);
  auto unknown = bytes;
  unknown[4] = 0x09;
  EXPECT_THROW(decode_frame(unknown), FrameError);
  const std::vector<std::uint8_t> huge{0xff, 0xff, 0xff, 0xff, 0x01};
  EXPECT_THROW(decode_frame(huge), FrameError);
}

TEST(Frames, SocketRoundtripAndTruncation) {
  int sv[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, sv), 0);
  write_frame(sv[0], {FrameType::identity, "{\"id\":\"x\"}"});
  EXPECT_EQ(read_frame(sv[1]), (Frame{FrameType::identity, "{\"id\":\"x\"}"}));
  const auto bytes = encode_frame({FrameType::ack, "{\"key_hash\":\"00\"}"});
  ASSERT_EQ(::write(sv[0], bytes.data(), 8), 8);
  ::close(sv[0]);
  EXPECT_THROW(read_frame(sv[1]), FrameError);
  ::close(sv[1]);
}

// --- handshake ---

class Handshake : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng(99);
    const auto p = *find_preset("toy");
    keys_ = new KeyPair(qkeygen(p.params, p.backend, rng));
    Rng other(100);
    other_ = new KeyPair(qkeygen(p.params, p.backend, other));
  }
  static void TearDownTestSuite() {
    delete keys_;
    delete other_;
  }

  ReceiverSetup receiver() const {
    const auto id = identity_from_string("alice", 4);
    return {keys_->mpk, qextract(keys_->mpk, keys_->msk, id), "alice"};
  }

  std::pair<HandshakeResult, HandshakeResult> session(const ReceiverSetup& rs, const SenderSetup& ss,
                                                      std::uint64_t seed) {
    return testing::loopback_session(rs, ss, seed);
  }

  static KeyPair* keys_;
  static KeyPair* other_;
};
KeyPair* Handshake::keys_ = nullptr;
KeyPair* Handshake::other_ = nullptr;

TEST_F(Handshake, LoopbackEstablishesTheSameKey) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto [s, r] = session(receiver(), {keys_->mpk}, seed);
    ASSERT_EQ(s.exit_code, kOk) << s.message;
    ASSERT_EQ(r.exit_code, kOk) << r.message;
    EXPECT_EQ(s.key_fingerprint, r.key_fingerprint);
    EXPECT_EQ(s.session_key, r.session_key);
    EXPECT_EQ(s.session_key.size(), 4u);
  }
}

TEST_F(Handshake, SeededSenderIsDeterministic) {
  const auto a = session(receiver(), {keys_->mpk}, 42).first;
  const auto b = session(receiver(), {keys_->mpk}, 42).first;
  EXPECT_EQ(a.session_key, b.session_key);
}

TEST_F(Handshake, MismatchedMpkFailsBothSides) {
  const auto [s, r] = session(receiver(), {other_->mpk}, 7);
  EXPECT_EQ(s.exit_code, kHandshakeFailed);
  EXPECT_EQ(r.exit_code, kHandshakeFailed);
  EXPECT_NE(s.message.find("handshake failed"), std::string::npos);
}

TEST_F(Handshake, ForeignUIsRejectedUnderBasisBackend) {
  // Only the basis backend has a public H, so only there can the sender check
  // that the offered U belongs to the claimed identity.
  const auto p = *find_preset("tiny-basis");
  Rng rng(5);
  const auto k = qkeygen(p.params, p.backend, rng);
  ReceiverSetup rs{k.mpk, qextract(k.mpk, k.msk, identity_from_string("bob", 2)), "alice"};
  rs.sk.id = identity_from_string("alice", 2);
  if (rs.sk.id == identity_from_string("bob", 2)) rs.sk.id[0] ^= 1;
  const auto [s, r] = session(rs, {k.mpk}, 8);
  EXPECT_EQ(s.exit_code, kHandshakeFailed) << s.message;
  EXPECT_NE(s.message.find("U does not match"), std::string::npos) << s.message;
  EXPECT_EQ(r.exit_code, kHandshakeFailed) << r.message;
}

TEST_F(Handshake, TruncatedFrameIsAFramingError) {
  const int lfd = listen_tcp("127.0.0.1", 0);
  const auto port = bound_port(lfd);
  std::thread peer([&] {
    const int fd = accept_one(lfd);
    (void)read_frame(fd);  // hello
    const auto bytes = encode_frame({FrameType::identity, "{\"id\":\"alice\"}"});
    const auto sent = ::write(fd, bytes.data(), bytes.size() / 2);
    EXPECT_GT(sent, 0);
    ::close(fd);
  });
  const int fd = connect_tcp("127.0.0.1", port);
  set_timeout(fd, 10);
  Rng rng(1);
  std::ostringstream log;
  const auto s = run_sender(fd, {keys_->mpk}, rng, log);
  ::close(fd);
  peer.join();
  ::close(lfd);
  EXPECT_EQ(s.exit_code, kFramingError) << s.message;
}

TEST_F(Handshake, UnknownFrameTypeIsAFramingError) {
  const int lfd = listen_tcp("127.0.0.1", 0);
  const auto port = bound_port(lfd);
  auto recv = std::async(std::launch::async, [&] {
    const int fd = accept_one(lfd);
    set_timeout(fd, 10);
    std::ostringstream log;
    auto r = run_receiver(fd, receiver(), log);
    ::close(fd);
    return r;
  });
  const int fd = connect_tcp("127.0.0.1", port);
  auto bytes = encode_frame({FrameType::hello, "{}"});
  bytes[4] = 0x7f;
  ASSERT_EQ(::write(fd, bytes.data(), bytes.size()), static_cast<ssize_t>(bytes.size()));
  const auto r = recv.get();
  ::close(fd);
  ::close(lfd);
  EXPECT_EQ(r.exit_code, kFramingError) << r.message;
}

TEST_F(Cli, HandshakeCommandsOverLoopback) {
  make_keys();
  auto recv = std::async(std::launch::async, [&] {
    return qibe_run({"handshake", "--listen", "0", "--host", "127.0.0.1", "--mpk", path("mpk.json"), "--sk",
                     path("sk.json"), "--id", "alice", "--port-file", path("port"), "--timeout", "10"});
  });
  for (int i = 0; i < 200 && !fs::exists(path("port")); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  ASSERT_TRUE(fs::exists(path("port")));
  const auto port = std::stoi(slurp(path("port")));
  const auto s = qibe_run({"handshake", "--connect", "127.0.0.1:" + std::to_string(port), "--mpk",
                           path("mpk.json"), "--seed", "3", "--timeout", "10"});
  const auto r = recv.get();
  ASSERT_EQ(s.code, 0) << s.err;
  ASSERT_EQ(r.code, 0) << r.err;
  auto fp = [](const std::string& text) {
    const auto at = text.find("session key fingerprint: ");
    return at == std::string::npos ? std::string() : text.substr(at + 25, text.find('\n', at) - at - 25);
  };
  EXPECT_FALSE(fp(s.out).empty());
  EXPECT_EQ(fp(s.out), fp(r.out));
}

}  // namespace
}  // namespace qibe::cli
