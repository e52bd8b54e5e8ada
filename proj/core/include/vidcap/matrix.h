// Copyright 2026 The vidcap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VIDCAP_MATRIX_H_
#define VIDCAP_MATRIX_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vidcap/error.h"

namespace vidcap::nn {

// Dense row-major matrix. Value type; copies are deep.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(size_t rows, size_t cols, T fill = T{0})
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(size_t rows, size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) {
      throw Error("Matrix: value count " + std::to_string(values_.size()) +
                  " does not match shape " + std::to_string(rows_) + "x" +
                  std::to_string(cols_));
    }
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  T& operator()(size_t r, size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(size_t r, size_t c) const {
    return values_[r * cols_ + c];
  }

  std::span<T> row(size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const T> row(size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  void Fill(T v) { std::fill(values_.begin(), values_.end(), v); }

  bool operator==(const Matrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> values_;
};

template <typename To, typename From>
Matrix<To> Cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  std::transform(m.values().begin(), m.values().end(), out.values().begin(),
                 [](From v) { return static_cast<To>(v); });
  return out;
}

template <typename To, typename From>
std::vector<To> Cast(std::span<const From> v) {
  return std::vector<To>(v.begin(), v.end());
}

// out += x * M, where x is a row vector of length M.rows(). Zero entries of x
// are skipped, which makes one-hot inputs cost O(M.cols()).
template <typename T>
void AddVecMat(std::span<const T> x, const Matrix<T>& m, std::span<T> out) {
  const size_t cols = m.cols();
  for (size_t k = 0; k < m.rows(); ++k) {
    const T xk = x[k];
    if (xk == T{0}) continue;
    const T* mrow = m.row(k).data();
    for (size_t j = 0; j < cols; ++j) out[j] += xk * mrow[j];
  }
}

// out += M * y, where y has length M.cols().
template <typename T>
void AddMatVec(const Matrix<T>& m, std::span<const T> y, std::span<T> out) {
  const size_t cols = m.cols();
  for (size_t r = 0; r < m.rows(); ++r) {
    const T* mrow = m.row(r).data();
    T acc = T{0};
    for (size_t j = 0; j < cols; ++j) acc += mrow[j] * y[j];
    out[r] += acc;
  }
}

// M += x^T y (outer product). Zero entries of x are skipped.
template <typename T>
void AddOuter(std::span<const T> x, std::span<const T> y, Matrix<T>& m) {
  const size_t cols = m.cols();
  for (size_t k = 0; k < m.rows(); ++k) {
    const T xk = x[k];
    if (xk == T{0}) continue;
    T* mrow = m.row(k).data();
    for (size_t j = 0; j < cols; ++j) mrow[j] += xk * y[j];
  }
}

template <typename T>
void AddInPlace(std::span<const T> src, std::span<T> dst) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace vidcap::nn

#endif  // VIDCAP_MATRIX_H_
