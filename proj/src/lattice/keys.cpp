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

#include "qibe/lattice/keys.hpp"

#include <stdexcept>

namespace qibe {

using nlohmann::json;

std::string bits_to_string(const IdentityBits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

IdentityBits bits_from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("bit string is empty");
  IdentityBits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

namespace {

json rows_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(json(std::vector<std::int64_t>(row.begin(), row.end())));
  }
  return rows;
}

IntMatrix rows_from_json(const json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows)
    throw std::invalid_argument(std::string(what) + ": wrong row count");
  IntMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument(std::string(what) + ": wrong column count");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer()) throw std::invalid_argument(std::string(what) + ": non-integer entry");
      out(r, c) = row[c].get<std::int64_t>();
    }
  }
  return out;
}

Seed seed_from_base64(const std::string& text) {
  const auto bytes = from_base64(text);
  if (bytes.size() != 32) throw std::invalid_argument("seed must be 32 bytes");
  Seed out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const MasterPublicKey& mpk) {
  const auto& p = mpk.params;
  json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["q"] = p.q;
  j["sigma"] = p.sigma;
  j["A"] = mpk.a.values().data();
  j["hash_config"] = {{"backend", to_string(mpk.hash_config.backend)},
                      {"seed", to_base64(mpk.hash_config.public_seed)}};
  return j;
}

MasterPublicKey mpk_from_json(const json& j) {
  return guarded("mpk", [&] {
    const auto params = SchemeParams::make(j.at("n").get<std::size_t>(), j.at("m").get<std::size_t>(),
                                           j.at("q").get<std::int64_t>(), j.at("sigma").get<double>());
    const auto& flat = j.at("A");
    if (!flat.is_array() || flat.size() != params.n * params.m)
      throw std::invalid_argument("mpk: A must hold n·m entries");
    ZqMatrix a(params.q, params.n, params.m);
    for (std::size_t i = 0; i < params.n; ++i) {
      for (std::size_t c = 0; c < params.m; ++c) {
        const auto v = flat[i * params.m + c].get<std::int64_t>();
        if (v < 0 || v >= params.q) throw std::invalid_argument("mpk: A entry out of range");
        a.set(i, c, v);
      }
    }
    const auto& hc = j.at("hash_config");
    HashConfig config{backend_from_string(hc.at("backend").get<std::string>()),
                      seed_from_base64(hc.at("seed").get<std::string>())};
    return MasterPublicKey{params, std::move(a), config};
  });
}

json to_json(const MasterSecretKey& msk) {
  json j;
  j["backend"] = to_string(msk.backend());
  if (const auto* ok = std::get_if<OracleKeySecret>(&msk.material)) {
    j["seed"] = to_base64(ok->seed);
  } else {
    j["T_A"] = rows_to_json(std::get<BasisSecret>(msk.material).basis);
  }
  return j;
}

MasterSecretKey msk_from_json(const json& j, const MasterPublicKey& mpk) {
  return guarded("msk", [&] {
    const auto backend = backend_from_string(j.at("backend").get<std::string>());
    if (backend != mpk.hash_config.backend)
      throw std::invalid_argument("msk: backend does not match mpk");
    if (backend == KeyBackend::oracle_key)
      return MasterSecretKey{OracleKeySecret{seed_from_base64(j.at("seed").get<std::string>())}};
    return MasterSecretKey{BasisSecret{rows_from_json(j.at("T_A"), mpk.params.m, mpk.params.m, "msk")}};
  });
}

json to_json(const IdentityKey& sk) {
  return json{{"id", bits_to_string(sk.id)}, {"R", rows_to_json(sk.r)}};
}

IdentityKey identity_key_from_json(const json& j, const MasterPublicKey& mpk) {
  return guarded("identity key", [&] {
    auto id = bits_from_string(j.at("id").get<std::string>());
    if (id.size() != mpk.params.n) throw std::invalid_argument("identity key: id length != n");
    return IdentityKey{std::move(id), rows_from_json(j.at("R"), mpk.params.m, mpk.params.n, "identity key")};
  });
}

std::string fingerprint(const MasterPublicKey& mpk) {
  const Seed d = digest("qibe.mpk", as_bytes(to_json(mpk).dump()));
  return to_hex(std::span<const std::uint8_t>(d.data(), 16));
}

}  // namespace qibe
