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

#ifndef VIDCAP_DENSE_H_
#define VIDCAP_DENSE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "vidcap/matrix.h"

namespace vidcap::nn {

template <typename T>
struct DenseParams {
  Matrix<T> W;       // in_dim x out_dim
  std::vector<T> b;  // out_dim

  static DenseParams Zeros(size_t in_dim, size_t out_dim) {
    return {Matrix<T>(in_dim, out_dim), std::vector<T>(out_dim, T{0})};
  }

  size_t ParamCount() const { return W.size() + b.size(); }
  bool operator==(const DenseParams&) const = default;
};

inline size_t DenseParamCount(size_t in_dim, size_t out_dim) {
  return (in_dim + 1) * out_dim;
}

// In-place softmax with row-max subtraction.
template <typename T>
void SoftmaxInPlace(std::span<T> logits);

// Row-wise softmax(H W + b).
template <typename T>
Matrix<T> DenseSoftmaxForward(const DenseParams<T>& p, const Matrix<T>& H);

template <typename T>
struct CrossEntropyResult {
  T loss = T{0};         // mean over counted rows
  Matrix<T> dlogits;     // gradient of `loss` w.r.t. the softmax logits
  size_t counted_rows = 0;
};

// Categorical cross-entropy of softmax outputs P against targets Y. Y rows are
// one-hot or all zero; all-zero rows are skipped entirely when mask_padding is
// set, and otherwise count toward the mean with zero loss. Throws when a row of
// P is not normalized within 1e-4.
template <typename T>
CrossEntropyResult<T> CrossEntropy(const Matrix<T>& P, const Matrix<T>& Y,
                                   bool mask_padding);

// Accumulates head gradients into `grads` and returns dLoss/dH.
template <typename T>
Matrix<T> DenseBackward(const DenseParams<T>& p, const Matrix<T>& H,
                        const Matrix<T>& dlogits, DenseParams<T>& grads);

}  // namespace vidcap::nn

#endif  // VIDCAP_DENSE_H_
