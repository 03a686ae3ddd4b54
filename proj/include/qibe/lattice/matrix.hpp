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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace qibe {

/// Dense row-major matrix. Only the handful of operations the scheme needs.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, std::span<const T> values) {
    if (values.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using IntVector = std::vector<std::int64_t>;
using RealMatrix = Matrix<double>;

// Canonical representative of x in [0, q).
inline std::int64_t reduce_mod(std::int64_t x, std::int64_t q) {
  const std::int64_t r = x % q;
  return r < 0 ? r + q : r;
}

/// Vector over Z_q; entries are kept reduced.
class ZqVector {
 public:
  ZqVector() = default;
  ZqVector(std::int64_t q, std::size_t size);
  ZqVector(std::int64_t q, std::span<const std::int64_t> values);

  std::int64_t modulus() const { return q_; }
  std::size_t size() const { return values_.size(); }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, std::int64_t v) { values_[i] = reduce_mod(v, q_); }
  const std::vector<std::int64_t>& values() const { return values_; }

  bool operator==(const ZqVector&) const = default;

 private:
  std::int64_t q_ = 0;
  std::vector<std::int64_t> values_;
};

/// Matrix over Z_q; entries are kept reduced.
class ZqMatrix {
 public:
  ZqMatrix() = default;
  ZqMatrix(std::int64_t q, std::size_t rows, std::size_t cols);
  ZqMatrix(std::int64_t q, const IntMatrix& values);

  std::int64_t modulus() const { return q_; }
  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return values_(r, c); }
  void set(std::size_t r, std::size_t c, std::int64_t v) { values_(r, c) = reduce_mod(v, q_); }
  ZqVector column(std::size_t c) const;
  const IntMatrix& values() const { return values_; }

  bool operator==(const ZqMatrix&) const = default;

 private:
  std::int64_t q_ = 0;
  IntMatrix values_;
};

// A·R mod q.
ZqMatrix multiply(const ZqMatrix& a, const IntMatrix& r);
// A·v mod q.
ZqVector multiply(const ZqMatrix& a, std::span<const std::int64_t> v);
// Aᵀ·s mod q.
ZqVector transpose_multiply(const ZqMatrix& a, const ZqVector& s);
// Rᵀ·c mod q for an integer matrix R.
ZqVector transpose_multiply(const IntMatrix& r, const ZqVector& c);

ZqVector add(const ZqVector& a, std::span<const std::int64_t> e);

// Some x with A·x ≡ u (mod q), found by Gaussian elimination over the prime
// field. Throws if A does not have full row rank mod q.
IntVector solve_mod(const ZqMatrix& a, const ZqVector& u);

// Product of an integer matrix and an integer vector, no reduction.
IntVector multiply(const IntMatrix& b, std::span<const std::int64_t> v);

double euclidean_norm(std::span<const std::int64_t> v);

}  // namespace qibe
