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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qibe/lattice/digest.hpp"
#include "qibe/lattice/gaussian.hpp"
#include "qibe/lattice/keys.hpp"
#include "qibe/lattice/matrix.hpp"
#include "qibe/lattice/params.hpp"
#include "qibe/lattice/rng.hpp"
#include "qibe/lattice/trapdoor.hpp"

namespace qibe {
namespace {

// --- rng ---

TEST(Rng, DeterministicPerSeed) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(Rng, SplitStreamsDiffer) {
  Rng a(7);
  Rng c1 = a.split("x");
  Rng c2 = a.split("x");  // the split counter moves on
  EXPECT_NE(c1.next_u64(), c2.next_u64());
  Rng b(7);
  Rng d1 = b.split("x");
  Rng again(7);
  EXPECT_EQ(again.split("x").next_u64(), d1.next_u64());
}

TEST(Rng, UniformBelowInRangeAndRoughlyFlat) {
  Rng rng(1);
  std::vector<int> counts(7);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

// --- params ---

TEST(Params, ValidatesAndDerivesBitLength) {
  const auto p = SchemeParams::make(4, 64, 12289, 4.0);
  EXPECT_EQ(p.bit_length, 14u);
  EXPECT_EQ(SchemeParams::make(1, 1, 101, 1).bit_length, 7u);
  EXPECT_EQ(SchemeParams::make(1, 1, 3, 1).bit_length, 2u);
  for (auto bad : {std::make_tuple(0, 64, 12289, 4.0), std::make_tuple(4, 0, 12289, 4.0),
                   std::make_tuple(4, 64, 12288, 4.0), std::make_tuple(4, 64, 2, 4.0),
                   std::make_tuple(4, 64, 12289, 0.0), std::make_tuple(4, 64, 12289, -1.0)}) {
    try {
      SchemeParams::make(std::get<0>(bad), std::get<1>(bad), std::get<2>(bad), std::get<3>(bad));
      ADD_FAILURE() << "accepted invalid parameters";
    } catch (const std::invalid_argument& e) {
      EXPECT_EQ(std::string(e.what()).rfind("invalid parameter", 0), 0u);
    }
  }
}

TEST(Params, BitLengthBrackets) {
  for (std::int64_t q = 3; q < 5000; ++q) {
    const unsigned L = bit_length(q);
    ASSERT_LE(std::int64_t{1} << (L - 1), q);
    ASSERT_LT(q, std::int64_t{1} << L);
  }
}

TEST(Params, Presets) {
  const auto toy = find_preset("toy");
  ASSERT_TRUE(toy);
  EXPECT_EQ(toy->params, SchemeParams::make(4, 64, 12289, 4.0));
  EXPECT_EQ(toy->backend, KeyBackend::oracle_key);
  const auto tiny = find_preset("tiny-basis");
  ASSERT_TRUE(tiny);
  EXPECT_EQ(tiny->params.n, 2u);
  EXPECT_EQ(tiny->params.m, 84u);
  EXPECT_EQ(tiny->params.q, 101);
  EXPECT_EQ(tiny->params.sigma, basis_sigma(2, 84, 101));
  EXPECT_NO_THROW(require_basis_dimension(tiny->params));
  EXPECT_THROW(require_basis_dimension(SchemeParams::make(2, 83, 101, 1)), std::invalid_argument);
  EXPECT_FALSE(find_preset("huge"));
}

// --- gaussian ---

TEST(Gaussian, SymmetricMean) {
  Rng rng(11);
  const int N = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < N; ++i) {
    const double x = double(sample_dgauss_int(4.0, rng));
    sum += x;
    sq += x * x;
  }
  const double mean = sum / N;
  const double stderr_ = std::sqrt((sq / N - mean * mean) / N);
  EXPECT_LT(std::abs(mean), 3 * stderr_);
}

TEST(Gaussian, ExactPmfHasModeAtZero) {
  const auto p = testing::gaussian_pmf(4.0, 48);
  for (const auto& [x, px] : p) EXPECT_LE(px, p.at(0));
  Rng rng(5);
  std::map<std::int64_t, int> counts;
  for (int i = 0; i < 100000; ++i) ++counts[sample_dgauss_int(4.0, rng)];
  for (const auto& [x, c] : counts) EXPECT_LE(c, counts[0]);
}

class GaussianDistance : public ::testing::TestWithParam<double> {};

TEST_P(GaussianDistance, EmpiricalCloseToExactPmf) {
  const double sigma = GetParam();
  const auto cut = static_cast<std::int64_t>(std::floor(kTailCut * sigma));
  const auto exact = testing::gaussian_pmf(sigma, cut);
  Rng rng(static_cast<std::uint64_t>(sigma * 1000));
  const int N = 100000;
  std::map<std::int64_t, double> hist;
  for (int i = 0; i < N; ++i) {
    const auto x = sample_dgauss_int(sigma, rng);
    ASSERT_LE(std::llabs(x), cut);
    hist[x] += 1.0 / N;
  }
  // Re-normalise against accumulated rounding before handing over.
  double total = 0;
  for (auto& [x, p] : hist) total += p;
  for (auto& [x, p] : hist) p /= total;
  EXPECT_LT(statistical_distance(hist, Distribution(exact.begin(), exact.end())), 0.01);
}

INSTANTIATE_TEST_SUITE_P(Sigmas, GaussianDistance, ::testing::Values(2.0, 4.0, 8.0));

TEST(Gaussian, VectorContract) {
  Rng rng(3);
  EXPECT_THROW(sample_dgauss_vec(0, 4.0, rng), std::invalid_argument);
  Rng a(9), b(9);
  EXPECT_EQ(sample_dgauss_vec(1, 4.0, a)[0], sample_dgauss_int(4.0, b));
  Rng c(10), d(10);
  EXPECT_EQ(sample_dgauss_vec(64, 4.0, c), sample_dgauss_vec(64, 4.0, d));
}

TEST(Gaussian, VectorNormTail) {
  Rng rng(21);
  const double bound = 4.0 * std::sqrt(64.0) * 1.5;
  int within = 0;
  for (int t = 0; t < 1000; ++t) within += euclidean_norm(sample_dgauss_vec(64, 4.0, rng)) <= bound;
  EXPECT_GE(within, 999);
}

TEST(StatisticalDistance, Definition) {
  const Distribution p{{0, 0.5}, {1, 0.5}};
  EXPECT_DOUBLE_EQ(statistical_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(statistical_distance(p, {{0, 1.0}}), 0.5);
  EXPECT_DOUBLE_EQ(statistical_distance({{0, 1.0}}, {{5, 1.0}}), 1.0);
  EXPECT_THROW(statistical_distance({{0, 0.7}}, p), std::invalid_argument);
  EXPECT_THROW(statistical_distance({{0, 1.5}, {1, -0.5}}, p), std::invalid_argument);
}

// --- matrices ---

TEST(Matrix, SolveModFindsPreimage) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    ZqMatrix a(101, 3, 10);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 10; ++c) a.set(r, c, std::int64_t(rng.uniform_below(101)));
    ZqVector u(101, 3);
    for (std::size_t i = 0; i < 3; ++i) u.set(i, std::int64_t(rng.uniform_below(101)));
    const IntVector x = solve_mod(a, u);
    EXPECT_EQ(multiply(a, x), u);
  }
  EXPECT_THROW(solve_mod(ZqMatrix(101, 2, 3), ZqVector(101, 2)), std::invalid_argument);
}

TEST(Matrix, TransposeProductsAgreeWithDirectSums) {
  Rng rng(8);
  ZqMatrix a(13, 2, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 4; ++c) a.set(r, c, std::int64_t(rng.uniform_below(13)));
  const std::vector<std::int64_t> sv{5, 11};
  const ZqVector s(13, sv);
  const ZqVector at = transpose_multiply(a, s);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(at[c], (a(0, c) * 5 + a(1, c) * 11) % 13);
  IntMatrix r(4, 2);
  r(0, 0) = -3;
  r(3, 1) = 7;
  const std::vector<std::int64_t> cv{1, 2, 3, 4};
  const ZqVector rt = transpose_multiply(r, ZqVector(13, cv));
  EXPECT_EQ(rt[0], reduce_mod(-3, 13));
  EXPECT_EQ(rt[1], 28 % 13);
}

// --- gram-schmidt ---

TEST(GramSchmidt, IdentityIsFixed) {
  IntMatrix id(4, 4);
  for (int i = 0; i < 4; ++i) id(i, i) = 1;
  const auto gs = gram_schmidt(id);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(gs.norms[i], 1.0);
    for (int j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(gs.ortho(i, j), i == j ? 1.0 : 0.0);
  }
}

TEST(GramSchmidt, OrthogonalAndReconstructs) {
  IntMatrix b(2, 2);
  b(0, 0) = 1;
  b(0, 1) = 1;
  b(1, 1) = 1;
  auto gs = gram_schmidt(b);
  EXPECT_NEAR(gs.ortho(0, 0) * gs.ortho(0, 1) + gs.ortho(1, 0) * gs.ortho(1, 1), 0.0, 1e-9);

  Rng rng(6);
  IntMatrix big(12, 12);
  for (std::size_t r = 0; r < 12; ++r)
    for (auto& v : big.row(r)) v = rng.uniform_int(-9, 9);
  gs = gram_schmidt(big);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j) {
      double dot = 0;
      for (std::size_t r = 0; r < 12; ++r) dot += gs.ortho(r, i) * gs.ortho(r, j);
      EXPECT_NEAR(dot / (gs.norms[i] * gs.norms[j]), 0.0, 1e-6);
    }
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 12; ++c) {
      double acc = 0;
      for (std::size_t k = 0; k < 12; ++k) acc += gs.ortho(r, k) * gs.coefficients(k, c);
      EXPECT_NEAR(acc, double(big(r, c)), 1e-6);
    }
}

TEST(GramSchmidt, RejectsRankDeficient) {
  IntMatrix b(3, 3);
  b(0, 0) = 1;
  b(1, 1) = 1;
  b(0, 2) = 2;
  b(1, 2) = -3;
  EXPECT_THROW(gram_schmidt(b), std::invalid_argument);
}

// --- trapgen ---

// Reference product (A·T) mod q computed entry by entry.
bool annihilates(const ZqMatrix& a, const IntMatrix& t) {
  const std::int64_t q = a.modulus();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + a(i, k) * (t(k, j) % q)) % q;
      if (acc != 0) return false;
    }
  return true;
}

TEST(Trapgen, AnnihilatesEveryInstance) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed);
    for (const auto& p : {SchemeParams::make(2, 84, 101, 95), SchemeParams::make(1, 30, 17, 10),
                          SchemeParams::make(3, 130, 97, 50)}) {
      const auto td = trapgen(p, rng);
      ASSERT_EQ(td.basis.rows(), p.m);
      ASSERT_EQ(td.basis.cols(), p.m);
      ASSERT_TRUE(annihilates(td.a, td.basis)) << "seed " << seed;
    }
  }
}

TEST(Trapgen, FullRankWithDeterminantQToTheN) {
  // |det T_A| equals the index of the lattice, q^n; the product of the
  // Gram-Schmidt norms is |det|.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const auto p = SchemeParams::make(2, 84, 101, 95);
    const auto gs = gram_schmidt(trapgen(p, rng).basis);
    double log_det = 0;
    for (double v : gs.norms) log_det += std::log(v);
    EXPECT_NEAR(log_det, 2 * std::log(101.0), 1e-6);
  }
}

TEST(Trapgen, GramSchmidtNormWithinDocumentedConstant) {
  for (const auto& p : {SchemeParams::make(2, 84, 101, 95), SchemeParams::make(1, 30, 17, 10),
                        SchemeParams::make(4, 340, 12289, 10)}) {
    const double bound = kTrapdoorQualityConstant * std::sqrt(double(p.n) * p.bit_length);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      const double norm = gram_schmidt(trapgen(p, rng).basis).max_norm();
      EXPECT_LE(norm, bound) << "n=" << p.n << " q=" << p.q << " seed=" << seed;
    }
  }
}

TEST(Trapgen, EntriesPassChiSquareUniformity) {
  // Pool the entries of 60 instances at q = 101 and compare with the uniform
  // distribution; the 0.999 quantile of chi-square with 100 degrees of freedom
  // is taken from the Wilson-Hilferty approximation.
  const auto p = SchemeParams::make(2, 84, 101, 95);
  std::vector<double> counts(101);
  double total = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(1000 + seed);
    const auto td = trapgen(p, rng);
    for (auto v : td.a.values().data()) {
      counts[v] += 1;
      total += 1;
    }
  }
  double chi2 = 0;
  const double expect = total / 101;
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  const double k = 100, z = 3.090232;  // z for p = 0.001
  const double critical = k * std::pow(1 - 2 / (9 * k) + z * std::sqrt(2 / (9 * k)), 3);
  EXPECT_LT(chi2, critical);
}

TEST(Trapgen, RejectsSmallM) {
  Rng rng(1);
  EXPECT_THROW(trapgen(SchemeParams::make(2, 83, 101, 95), rng), std::invalid_argument);
}

// --- sample_d ---

class SampleD : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(77);
    td_ = trapgen(params_, rng);
  }
  SchemeParams params_ = SchemeParams::make(2, 84, 101, basis_sigma(2, 84, 101));
  Trapdoor td_;
};

TEST_F(SampleD, HitsSyndromeAndNormBound) {
  Rng rng(1);
  const PreimageSampler sampler(td_.a, td_.basis);
  EXPECT_LE(sampler.min_sigma(), params_.sigma);
  for (int t = 0; t < 50; ++t) {
    ZqVector u(101, 2);
    u.set(0, std::int64_t(rng.uniform_below(101)));
    u.set(1, std::int64_t(rng.uniform_below(101)));
    const IntVector r = sampler.sample(u, params_.sigma, rng);
    ASSERT_EQ(multiply(td_.a, r), u);
    ASSERT_LE(euclidean_norm(r), short_vector_bound(params_.sigma, 84));
  }
}

TEST_F(SampleD, ZeroSyndromeGivesLatticeVector) {
  Rng rng(2);
  const IntVector r = sample_d(td_.a, td_.basis, ZqVector(101, 2), params_.sigma, rng);
  EXPECT_EQ(multiply(td_.a, r), ZqVector(101, 2));
  EXPECT_GT(euclidean_norm(r), 0.0);
}

TEST_F(SampleD, RejectsWrongDimension) {
  Rng rng(3);
  EXPECT_THROW(sample_d(td_.a, td_.basis, ZqVector(101, 3), params_.sigma, rng), std::invalid_argument);
}

TEST_F(SampleD, WarnsBelowSmoothingBound) {
  Rng rng(4);
  std::ostringstream captured;
  auto* old = std::clog.rdbuf(captured.rdbuf());
  try {
    sample_d(td_.a, td_.basis, ZqVector(101, 2), 1.0, rng);
  } catch (const std::runtime_error&) {
    // The norm bound may also give up at this sigma; only the warning matters.
  }
  std::clog.rdbuf(old);
  EXPECT_NE(captured.str().find("warning"), std::string::npos);
}

TEST_F(SampleD, CoordinateMeansMatchSamplerCentre) {
  // The sampler targets the coset {r : A·r = u} centred at the origin.
  Rng rng(5);
  const PreimageSampler sampler(td_.a, td_.basis);
  ZqVector u(101, 2);
  u.set(0, 17);
  u.set(1, 64);
  const int draws = 200;
  std::vector<double> sum(84), sq(84);
  for (int d = 0; d < draws; ++d) {
    const IntVector r = sampler.sample(u, params_.sigma, rng);
    for (std::size_t i = 0; i < 84; ++i) {
      sum[i] += double(r[i]);
      sq[i] += double(r[i]) * double(r[i]);
    }
  }
  for (std::size_t i = 0; i < 84; ++i) {
    const double mean = sum[i] / draws;
    const double sd = std::sqrt(sq[i] / draws - mean * mean);
    EXPECT_LT(std::abs(mean), 3 * sd / std::sqrt(double(draws))) << "coordinate " << i;
  }
}

// --- key-first pairs ---

TEST(KeyFirst, ContractNormAndDeterminism) {
  Rng setup(9);
  ZqMatrix a(12289, 4, 64);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 64; ++c) a.set(r, c, std::int64_t(setup.uniform_below(12289)));
  int within = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto [u, r] = keyfirst_pair(a, 4.0, 4, rng);
    ASSERT_EQ(multiply(a, r), u);
    for (std::size_t i = 0; i < 4; ++i, ++total) within += euclidean_norm(r.column(i)) <= short_vector_bound(4.0, 64);
    Rng again(seed);
    ASSERT_EQ(keyfirst_pair(a, 4.0, 4, again).second, r);
  }
  EXPECT_GE(within, total - 1);
}

// --- key files ---

TEST(Keys, JsonRoundTrip) {
  Rng rng(1);
  const auto p = SchemeParams::make(2, 84, 101, 95);
  const auto td = trapgen(p, rng);
  const MasterPublicKey mpk{p, td.a, HashConfig{KeyBackend::basis, rng.fresh_seed()}};
  const MasterSecretKey msk{BasisSecret{td.basis}};
  EXPECT_EQ(mpk_from_json(nlohmann::json::parse(to_json(mpk).dump())), mpk);
  EXPECT_EQ(msk_from_json(nlohmann::json::parse(to_json(msk).dump()), mpk), msk);
  const MasterSecretKey ok{OracleKeySecret{rng.fresh_seed()}};
  MasterPublicKey mpk2 = mpk;
  mpk2.hash_config.backend = KeyBackend::oracle_key;
  EXPECT_EQ(msk_from_json(to_json(ok), mpk2), ok);
  IdentityKey sk{{1, 0}, IntMatrix(84, 2, -3)};
  EXPECT_EQ(identity_key_from_json(to_json(sk), mpk), sk);
  EXPECT_EQ(fingerprint(mpk), fingerprint(mpk_from_json(to_json(mpk))));
  EXPECT_NE(fingerprint(mpk), fingerprint(mpk2));
}

TEST(Keys, MalformedDocumentsRejected) {
  Rng rng(2);
  const auto p = SchemeParams::make(1, 4, 13, 2);
  MasterPublicKey mpk{p, ZqMatrix(13, 1, 4), HashConfig{KeyBackend::oracle_key, {}}};
  auto j = to_json(mpk);
  j["A"][0] = 13;
  EXPECT_THROW(mpk_from_json(j), std::invalid_argument);
  j = to_json(mpk);
  j.erase("q");
  EXPECT_THROW(mpk_from_json(j), std::invalid_argument);
  EXPECT_THROW(msk_from_json({{"backend", "oracle_key"}, {"seed", "!!"}}, mpk), std::invalid_argument);
  EXPECT_THROW(msk_from_json({{"backend", "basis"}, {"T_A", {{1}}}}, mpk), std::invalid_argument);
  EXPECT_THROW(identity_key_from_json({{"id", "01"}, {"R", nlohmann::json::array()}}, mpk), std::invalid_argument);
}

TEST(Digest, HexAndBase64) {
  const std::vector<std::uint8_t> bytes{0, 1, 254, 255};
  EXPECT_EQ(to_hex(bytes), "0001feff");
  EXPECT_EQ(from_base64(to_base64(bytes)), bytes);
  EXPECT_THROW(from_base64("@@@"), std::invalid_argument);
  EXPECT_NE(digest(as_bytes("a")), digest(as_bytes("b")));
  EXPECT_NE(keyed_digest(Seed{}, as_bytes("a")), digest(as_bytes("a")));
}

}  // namespace
}  // namespace qibe
