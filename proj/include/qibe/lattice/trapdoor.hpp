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

#include <utility>

#include "qibe/lattice/matrix.hpp"
#include "qibe/lattice/params.hpp"
#include "qibe/lattice/rng.hpp"

namespace qibe {

/// Gram-Schmidt data for the columns b_0..b_{k-1} of a basis, taken in order.
///
/// `coefficients` is upper unitriangular with B = ortho · coefficients, where
/// coefficients(i, j) = <b_j, ortho_i> / |ortho_i|² for i < j.
struct GramSchmidt {
  RealMatrix ortho;
  std::vector<double> norms;
  RealMatrix coefficients;

  // Length of the longest orthogonalised vector.
  double max_norm() const;
};

// Throws std::invalid_argument for rank-deficient input.
GramSchmidt gram_schmidt(const IntMatrix& basis);

struct Trapdoor {
  ZqMatrix a;
  IntMatrix basis;  // T_A, m×m, columns in Λ⊥(A)
};

/// Gadget-based trapdoor generation: A = [Ā | G - ĀR] with Ā uniform, R a
/// ternary matrix and G = I_n ⊗ (1, 2, ..., 2^(k-1)). The basis is
/// [[I, R], [0, I]]·[[0, I], [S, W]] where S is the standard basis of Λ⊥(G)
/// and G·W ≡ -Ā. Requires m >= 6·n·ceil(log2 q).
Trapdoor trapgen(const SchemeParams& params, Rng& rng);

/// Klein/GPV nearest-plane preimage sampler over a fixed trapdoor basis.
class PreimageSampler {
 public:
  PreimageSampler(ZqMatrix a, IntMatrix basis);

  // sigma below |GS(T_A)|·sqrt(log2 m) is accepted with a warning on stderr.
  // Output satisfies A·r ≡ u and |r| <= 1.5·sigma·sqrt(m); a draw violating
  // the bound is retried up to 16 times before std::runtime_error.
  IntVector sample(const ZqVector& u, double sigma, Rng& rng) const;

  double quality() const { return gs_.max_norm(); }
  double min_sigma() const;

 private:
  IntVector sample_lattice_near(std::span<const double> center, double sigma, Rng& rng) const;

  ZqMatrix a_;
  IntMatrix basis_;
  GramSchmidt gs_;
};

IntVector sample_d(const ZqMatrix& a, const IntMatrix& basis, const ZqVector& u, double sigma,
                   Rng& rng);

/// Key-first pair: each column of R drawn from D_{Z^m, sigma}, U = A·R mod q.
std::pair<ZqMatrix, IntMatrix> keyfirst_pair(const ZqMatrix& a, double sigma, std::size_t n,
                                             Rng& rng);

// Column norm bound used for keys and preimages: 1.5·sigma·sqrt(m).
double short_vector_bound(double sigma, std::size_t m);

}  // namespace qibe
