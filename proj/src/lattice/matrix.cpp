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

#include "qibe/lattice/matrix.hpp"

#include <cmath>
#include <utility>

namespace qibe {

ZqVector::ZqVector(std::int64_t q, std::size_t size) : q_(q), values_(size, 0) {}

ZqVector::ZqVector(std::int64_t q, std::span<const std::int64_t> values)
    : q_(q), values_(values.begin(), values.end()) {
  for (auto& v : values_) v = reduce_mod(v, q_);
}

ZqMatrix::ZqMatrix(std::int64_t q, std::size_t rows, std::size_t cols)
    : q_(q), values_(rows, cols, 0) {}

ZqMatrix::ZqMatrix(std::int64_t q, const IntMatrix& values) : q_(q), values_(values) {
  for (std::size_t r = 0; r < values_.rows(); ++r)
    for (auto& v : values_.row(r)) v = reduce_mod(v, q_);
}

ZqVector ZqMatrix::column(std::size_t c) const {
  const auto col = values_.column(c);
  return ZqVector(q_, col);
}

ZqMatrix multiply(const ZqMatrix& a, const IntMatrix& r) {
  if (a.cols() != r.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  const std::int64_t q = a.modulus();
  ZqMatrix out(q, a.rows(), r.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc = reduce_mod(acc + a(i, k) * reduce_mod(r(k, j), q), q);
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

ZqVector multiply(const ZqMatrix& a, std::span<const std::int64_t> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("multiply: dimension mismatch");
  const std::int64_t q = a.modulus();
  ZqVector out(q, a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc = reduce_mod(acc + a(i, k) * reduce_mod(v[k], q), q);
    out.set(i, acc);
  }
  return out;
}

ZqVector transpose_multiply(const ZqMatrix& a, const ZqVector& s) {
  if (a.rows() != s.size()) throw std::invalid_argument("transpose_multiply: dimension mismatch");
  const std::int64_t q = a.modulus();
  ZqVector out(q, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc = reduce_mod(acc + a(i, j) * s[i], q);
    out.set(j, acc);
  }
  return out;
}

ZqVector transpose_multiply(const IntMatrix& r, const ZqVector& c) {
  if (r.rows() != c.size()) throw std::invalid_argument("transpose_multiply: dimension mismatch");
  const std::int64_t q = c.modulus();
  ZqVector out(q, r.cols());
  for (std::size_t j = 0; j < r.cols(); ++j) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < r.rows(); ++i) acc = reduce_mod(acc + reduce_mod(r(i, j), q) * c[i], q);
    out.set(j, acc);
  }
  return out;
}

ZqVector add(const ZqVector& a, std::span<const std::int64_t> e) {
  if (a.size() != e.size()) throw std::invalid_argument("add: dimension mismatch");
  ZqVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a[i] + e[i]);
  return out;
}

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t q) {
  // q is prime: a^(q-2).
  std::int64_t result = 1;
  std::int64_t base = reduce_mod(a, q);
  std::int64_t e = q - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result;
}

}  // namespace

IntVector solve_mod(const ZqMatrix& a, const ZqVector& u) {
  if (a.rows() != u.size()) throw std::invalid_argument("solve_mod: dimension mismatch");
  const std::int64_t q = a.modulus();
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  // Augmented [A | u], reduced to row echelon form.
  IntMatrix aug(n, m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug(i, j) = a(i, j);
    aug(i, m) = u[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && aug(sel, col) == 0) ++sel;
    if (sel == n) continue;
    if (sel != row)
      for (std::size_t j = 0; j <= m; ++j) std::swap(aug(row, j), aug(sel, j));
    const std::int64_t inv = inverse_mod(aug(row, col), q);
    for (std::size_t j = 0; j <= m; ++j) aug(row, j) = aug(row, j) * inv % q;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || aug(i, col) == 0) continue;
      const std::int64_t f = aug(i, col);
      for (std::size_t j = 0; j <= m; ++j) aug(i, j) = reduce_mod(aug(i, j) - f * aug(row, j), q);
    }
    pivots.push_back(col);
    ++row;
  }
  if (pivots.size() < n) throw std::invalid_argument("solve_mod: matrix is not full row rank mod q");
  IntVector x(m, 0);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = aug(i, m);
  return x;
}

IntVector multiply(const IntMatrix& b, std::span<const std::int64_t> v) {
  if (b.cols() != v.size()) throw std::invalid_argument("multiply: dimension mismatch");
  IntVector out(b.rows(), 0);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out[i] += b(i, j) * v[j];
  return out;
}

double euclidean_norm(std::span<const std::int64_t> v) {
  double acc = 0;
  for (auto x : v) acc += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(acc);
}

}  // namespace qibe
