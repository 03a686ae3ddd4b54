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

#include "qibe/scheme/serialize.hpp"

#include <stdexcept>

namespace qibe {

using nlohmann::json;

json to_json(const Ciphertext& ct) {
  return {{"c1", ct.c1.values()}, {"psi", sim::to_json(ct.psi)}, {"params_fingerprint", ct.params_fingerprint}};
}

Ciphertext ciphertext_from_json(const json& j, const MasterPublicKey& mpk) {
  Ciphertext ct;
  try {
    const auto& c1 = j.at("c1");
    if (!c1.is_array()) throw std::invalid_argument("c1 must be an array");
    std::vector<std::int64_t> values;
    for (const auto& v : c1) {
      if (!v.is_number_integer()) throw std::invalid_argument("c1 entries must be integers");
      const auto x = v.get<std::int64_t>();
      if (x < 0 || x >= mpk.params.q) throw std::invalid_argument("c1 entry out of range");
      values.push_back(x);
    }
    ct.c1 = ZqVector(mpk.params.q, values);
    ct.psi = sim::state_from_json(j.at("psi"));
    ct.params_fingerprint = j.at("params_fingerprint").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed ciphertext: ") + e.what());
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("malformed ciphertext", 0) == 0) throw;
    throw std::invalid_argument("malformed ciphertext: " + msg);
  }
  if (ct.params_fingerprint != fingerprint(mpk))
    throw std::invalid_argument("malformed ciphertext: made for a different master public key");
  validate(mpk, ct);
  return ct;
}

json plaintext_to_json(const sim::SparseState& s) {
  json j = sim::to_json(s);
  j.erase("width");
  j["n"] = s.width();
  return j;
}

sim::SparseState plaintext_from_json(const json& j) {
  try {
    json state = j;
    state["width"] = j.at("n");
    state.erase("n");
    return sim::state_from_json(state);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("plaintext json: ") + e.what());
  }
}

}  // namespace qibe
