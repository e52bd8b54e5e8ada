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

#include "vidcap/dense.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vidcap/error.h"

namespace vidcap::nn {

template <typename T>
void SoftmaxInPlace(std::span<T> logits) {
  const T max = *std::max_element(logits.begin(), logits.end());
  T sum = T{0};
  for (T& v : logits) {
    v = std::exp(v - max);
    sum += v;
  }
  for (T& v : logits) v /= sum;
}

template <typename T>
Matrix<T> DenseSoftmaxForward(const DenseParams<T>& p, const Matrix<T>& H) {
  if (H.cols() != p.W.rows() || p.b.size() != p.W.cols()) {
    throw Error("dense: input width " + std::to_string(H.cols()) +
                " does not match kernel " + std::to_string(p.W.rows()) + "x" +
                std::to_string(p.W.cols()));
  }
  Matrix<T> P(H.rows(), p.W.cols());
  for (size_t t = 0; t < H.rows(); ++t) {
    std::span<T> row = P.row(t);
    std::copy(p.b.begin(), p.b.end(), row.begin());
    AddVecMat<T>(H.row(t), p.W, row);
    SoftmaxInPlace(row);
  }
  return P;
}

template <typename T>
CrossEntropyResult<T> CrossEntropy(const Matrix<T>& P, const Matrix<T>& Y,
                                   bool mask_padding) {
  if (P.rows() != Y.rows() || P.cols() != Y.cols()) {
    throw Error("cross_entropy: shape mismatch " + std::to_string(P.rows()) +
                "x" + std::to_string(P.cols()) + " vs " +
                std::to_string(Y.rows()) + "x" + std::to_string(Y.cols()));
  }
  CrossEntropyResult<T> out;
  out.dlogits = Matrix<T>(P.rows(), P.cols());
  std::vector<T> target_mass(P.rows(), T{0});
  std::vector<bool> counted(P.rows(), false);

  for (size_t t = 0; t < P.rows(); ++t) {
    T psum = T{0};
    for (T v : P.row(t)) psum += v;
    if (std::abs(psum - T{1}) > T(1e-4)) {
      throw Error("cross_entropy: row " + std::to_string(t) +
                  " of P sums to " + std::to_string(psum));
    }
    T mass = T{0};
    for (T y : Y.row(t)) mass += y;
    target_mass[t] = mass;
    counted[t] = !(mask_padding && mass == T{0});
    if (counted[t]) ++out.counted_rows;
  }
  if (out.counted_rows == 0) return out;

  const T scale = T{1} / static_cast<T>(out.counted_rows);
  T total = T{0};
  for (size_t t = 0; t < P.rows(); ++t) {
    if (!counted[t]) continue;
    std::span<const T> prow = P.row(t);
    std::span<const T> yrow = Y.row(t);
    std::span<T> drow = out.dlogits.row(t);
    for (size_t j = 0; j < prow.size(); ++j) {
      if (yrow[j] != T{0}) {
        const T pj = std::max(prow[j], std::numeric_limits<T>::min());
        total -= yrow[j] * std::log(pj);
      }
      // d/dz of -sum_j y_j log softmax(z)_j is p * sum(y) - y.
      drow[j] = (prow[j] * target_mass[t] - yrow[j]) * scale;
    }
  }
  out.loss = total * scale;
  return out;
}

template <typename T>
Matrix<T> DenseBackward(const DenseParams<T>& p, const Matrix<T>& H,
                        const Matrix<T>& dlogits, DenseParams<T>& grads) {
  if (dlogits.rows() != H.rows() || dlogits.cols() != p.W.cols()) {
    throw Error("dense backward: gradient shape mismatch");
  }
  Matrix<T> dH(H.rows(), H.cols());
  for (size_t t = 0; t < H.rows(); ++t) {
    std::span<const T> d = dlogits.row(t);
    AddOuter<T>(H.row(t), d, grads.W);
    AddInPlace<T>(d, grads.b);
    AddMatVec<T>(p.W, d, dH.row(t));
  }
  return dH;
}

#define VIDCAP_INSTANTIATE_DENSE(T)                                          \
  template void SoftmaxInPlace<T>(std::span<T>);                             \
  template Matrix<T> DenseSoftmaxForward<T>(const DenseParams<T>&,           \
                                            const Matrix<T>&);               \
  template CrossEntropyResult<T> CrossEntropy<T>(const Matrix<T>&,           \
                                                 const Matrix<T>&, bool);    \
  template Matrix<T> DenseBackward<T>(const DenseParams<T>&,                 \
                                      const Matrix<T>&, const Matrix<T>&,    \
                                      DenseParams<T>&);

VIDCAP_INSTANTIATE_DENSE(float)
VIDCAP_INSTANTIATE_DENSE(double)

#undef VIDCAP_INSTANTIATE_DENSE

}  // namespace vidcap::nn
