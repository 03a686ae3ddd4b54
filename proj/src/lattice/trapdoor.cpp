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

#include "qibe/lattice/trapdoor.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "qibe/lattice/gaussian.hpp"

namespace qibe {

double GramSchmidt::max_norm() const {
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

GramSchmidt gram_schmidt(const IntMatrix& basis) {
  const std::size_t dim = basis.rows();
  const std::size_t k = basis.cols();
  GramSchmidt gs{RealMatrix(dim, k), std::vector<double>(k), RealMatrix(k, k)};
  std::vector<double> sq(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> v(dim);
    double input_norm = 0;
    for (std::size_t r = 0; r < dim; ++r) {
      v[r] = static_cast<double>(basis(r, j));
      input_norm += v[r] * v[r];
    }
    // Modified Gram-Schmidt: project out each earlier direction in turn.
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t r = 0; r < dim; ++r) dot += v[r] * gs.ortho(r, i);
      const double mu = dot / sq[i];
      for (std::size_t r = 0; r < dim; ++r) v[r] -= mu * gs.ortho(r, i);
    }
    double norm2 = 0;
    for (double x : v) norm2 += x * x;
    if (norm2 <= 1e-18 * std::max(1.0, input_norm))
      throw std::invalid_argument("gram_schmidt: basis is rank deficient");
    for (std::size_t r = 0; r < dim; ++r) gs.ortho(r, j) = v[r];
    sq[j] = norm2;
    gs.norms[j] = std::sqrt(norm2);
  }
  for (std::size_t j = 0; j < k; ++j) {
    gs.coefficients(j, j) = 1.0;
    for (std::size_t i = 0; i < j; ++i) {
      double dot = 0;
      for (std::size_t r = 0; r < dim; ++r) dot += static_cast<double>(basis(r, j)) * gs.ortho(r, i);
      gs.coefficients(i, j) = dot / sq[i];
    }
  }
  return gs;
}

Trapdoor trapgen(const SchemeParams& params, Rng& rng) {
  require_basis_dimension(params);
  const std::int64_t q = params.q;
  const std::size_t n = params.n;
  const std::size_t k = params.bit_length;
  const std::size_t nk = n * k;
  const std::size_t mbar = params.m - nk;
  const std::size_t m = params.m;

  IntMatrix abar(n, mbar);
  for (std::size_t i = 0; i < n; ++i)
    for (auto& v : abar.row(i)) v = static_cast<std::int64_t>(rng.uniform_below(q));

  // R: entries -1, 0, 1 with probabilities 1/4, 1/2, 1/4.
  IntMatrix r(mbar, nk);
  for (std::size_t i = 0; i < mbar; ++i) {
    for (auto& v : r.row(i)) {
      const auto bits = rng.uniform_below(4);
      v = bits == 0 ? -1 : (bits == 1 ? 1 : 0);
    }
  }

  ZqMatrix a(q, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < mbar; ++j) a.set(i, j, abar(i, j));
    for (std::size_t j = 0; j < nk; ++j) {
      std::int64_t acc = (j / k == i) ? (std::int64_t{1} << (j % k)) : 0;
      for (std::size_t t = 0; t < mbar; ++t) acc = reduce_mod(acc - abar(i, t) * r(t, j), q);
      a.set(i, mbar + j, acc);
    }
  }

  // S = I_n ⊗ S_k with S_k columns 2e_i - e_{i+1} and the bits of q.
  IntMatrix s(nk, nk);
  for (std::size_t blk = 0; blk < n; ++blk) {
    const std::size_t o = blk * k;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      s(o + i, o + i) = 2;
      s(o + i + 1, o + i) = -1;
    }
    for (std::size_t i = 0; i < k; ++i) s(o + i, o + k - 1) = (q >> i) & 1;
  }
  // W: bit decomposition of -Ā so that G·W ≡ -Ā.
  IntMatrix w(nk, mbar);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < mbar; ++j) {
      const std::int64_t v = reduce_mod(-abar(i, j), q);
      for (std::size_t b = 0; b < k; ++b) w(i * k + b, j) = (v >> b) & 1;
    }
  }

  // T_A = [[R·S, I + R·W], [S, W]].
  IntMatrix basis(m, m);
  for (std::size_t i = 0; i < mbar; ++i) {
    for (std::size_t j = 0; j < nk; ++j) {
      std::int64_t acc = 0;
      for (std::size_t t = 0; t < nk; ++t) acc += r(i, t) * s(t, j);
      basis(i, j) = acc;
    }
    for (std::size_t j = 0; j < mbar; ++j) {
      std::int64_t acc = (i == j) ? 1 : 0;
      for (std::size_t t = 0; t < nk; ++t) acc += r(i, t) * w(t, j);
      basis(i, nk + j) = acc;
    }
  }
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < nk; ++j) basis(mbar + i, j) = s(i, j);
    for (std::size_t j = 0; j < mbar; ++j) basis(mbar + i, nk + j) = w(i, j);
  }
  return Trapdoor{std::move(a), std::move(basis)};
}

double short_vector_bound(double sigma, std::size_t m) {
  return 1.5 * sigma * std::sqrt(static_cast<double>(m));
}

PreimageSampler::PreimageSampler(ZqMatrix a, IntMatrix basis)
    : a_(std::move(a)), basis_(std::move(basis)), gs_(gram_schmidt(basis_)) {
  if (basis_.rows() != a_.cols() || basis_.cols() != a_.cols())
    throw std::invalid_argument("PreimageSampler: basis must be m×m");
}

double PreimageSampler::min_sigma() const {
  return quality() * std::sqrt(std::log2(static_cast<double>(a_.cols())));
}

IntVector PreimageSampler::sample_lattice_near(std::span<const double> center, double sigma,
                                               Rng& rng) const {
  const std::size_t m = basis_.rows();
  std::vector<double> c(center.begin(), center.end());
  IntVector v(m, 0);
  for (std::size_t idx = m; idx-- > 0;) {
    double dot = 0;
    for (std::size_t r = 0; r < m; ++r) dot += c[r] * gs_.ortho(r, idx);
    const double norm = gs_.norms[idx];
    const double cprime = dot / (norm * norm);
    const std::int64_t z = sample_dgauss_centered(sigma / norm, cprime, rng);
    if (z == 0) continue;
    for (std::size_t r = 0; r < m; ++r) {
      c[r] -= static_cast<double>(z * basis_(r, idx));
      v[r] += z * basis_(r, idx);
    }
  }
  return v;
}

IntVector PreimageSampler::sample(const ZqVector& u, double sigma, Rng& rng) const {
  if (u.size() != a_.rows()) throw std::invalid_argument("sample_d: syndrome dimension mismatch");
  if (sigma < min_sigma()) {
    std::clog << "warning: sample_d sigma " << sigma << " is below |GS(T_A)|·sqrt(log2 m) = "
              << min_sigma() << "\n";
  }
  const IntVector t = solve_mod(a_, u);
  std::vector<double> center(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) center[i] = -static_cast<double>(t[i]);
  const double bound = short_vector_bound(sigma, a_.cols());
  for (int attempt = 0; attempt < 16; ++attempt) {
    IntVector r = sample_lattice_near(center, sigma, rng);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t[i];
    if (euclidean_norm(r) <= bound) return r;
  }
  throw std::runtime_error("sample_d: norm bound failed 16 times; parameters are too tight");
}

IntVector sample_d(const ZqMatrix& a, const IntMatrix& basis, const ZqVector& u, double sigma,
                   Rng& rng) {
  return PreimageSampler(a, basis).sample(u, sigma, rng);
}

std::pair<ZqMatrix, IntMatrix> keyfirst_pair(const ZqMatrix& a, double sigma, std::size_t n,
                                             Rng& rng) {
  const std::size_t m = a.cols();
  IntMatrix r(m, n);
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector col = sample_dgauss_vec(m, sigma, rng);
    r.set_column(i, col);
  }
  return {multiply(a, r), std::move(r)};
}

}  // namespace qibe
