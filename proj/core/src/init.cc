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

#include "vidcap/init.h"

#include <cmath>

namespace vidcap::nn {

template <typename T>
void GlorotUniform(Matrix<T>& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (T& v : m.values()) v = static_cast<T>(rng.Uniform(-limit, limit));
}

Matrix<double> OrthonormalColumns(size_t rows, size_t cols, Rng& rng) {
  // Work on the transpose so each column is a contiguous row.
  Matrix<double> qt(cols, rows);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t j = 0; j < cols; ++j) qt(j, r) = rng.Gaussian();
  }
  // Modified Gram-Schmidt, two passes per column. diag(R) is then the
  // positive column norm, so no sign correction is needed.
  for (size_t j = 0; j < cols; ++j) {
    std::span<double> col = qt.row(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t k = 0; k < j; ++k) {
        std::span<const double> qk = qt.row(k);
        double dot = 0.0;
        for (size_t r = 0; r < rows; ++r) dot += qk[r] * col[r];
        for (size_t r = 0; r < rows; ++r) col[r] -= dot * qk[r];
      }
    }
    double norm = 0.0;
    for (double v : col) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : col) v /= norm;
  }
  Matrix<double> q(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t j = 0; j < cols; ++j) q(r, j) = qt(j, r);
  }
  return q;
}

template <typename T>
void Orthogonal(Matrix<T>& m, Rng& rng) {
  const bool transpose = m.rows() < m.cols();
  const size_t tall = transpose ? m.cols() : m.rows();
  const size_t narrow = transpose ? m.rows() : m.cols();
  const Matrix<double> q = OrthonormalColumns(tall, narrow, rng);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      m(r, c) = static_cast<T>(transpose ? q(c, r) : q(r, c));
    }
  }
}

template <typename T>
void InitLstm(LstmParams<T>& p, Rng& rng) {
  GlorotUniform(p.W, rng);
  Orthogonal(p.U, rng);
  const size_t hid = p.hidden();
  std::fill(p.b.begin(), p.b.end(), T{0});
  std::fill(p.b.begin() + kForgetGate * hid, p.b.begin() + (kForgetGate + 1) * hid,
            T{1});
}

template <typename T>
void InitDense(DenseParams<T>& p, Rng& rng) {
  GlorotUniform(p.W, rng);
  std::fill(p.b.begin(), p.b.end(), T{0});
}

template void GlorotUniform<float>(Matrix<float>&, Rng&);
template void GlorotUniform<double>(Matrix<double>&, Rng&);
template void Orthogonal<float>(Matrix<float>&, Rng&);
template void Orthogonal<double>(Matrix<double>&, Rng&);
template void InitLstm<float>(LstmParams<float>&, Rng&);
template void InitLstm<double>(LstmParams<double>&, Rng&);
template void InitDense<float>(DenseParams<float>&, Rng&);
template void InitDense<double>(DenseParams<double>&, Rng&);

}  // namespace vidcap::nn
