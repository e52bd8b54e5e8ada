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

#ifndef VIDCAP_LSTM_H_
#define VIDCAP_LSTM_H_

#include <cstddef>
#include <span>
#include <vector>

#include "vidcap/matrix.h"

namespace vidcap::nn {

// Gate blocks are laid out along the 4*hidden axis in the order i, f, g, o.
enum Gate : size_t { kInputGate = 0, kForgetGate = 1, kCellGate = 2, kOutputGate = 3 };

template <typename T>
struct LstmParams {
  Matrix<T> W;       // input_dim x 4*hidden
  Matrix<T> U;       // hidden x 4*hidden
  std::vector<T> b;  // 4*hidden

  static LstmParams Zeros(size_t input_dim, size_t hidden) {
    return {Matrix<T>(input_dim, 4 * hidden), Matrix<T>(hidden, 4 * hidden),
            std::vector<T>(4 * hidden, T{0})};
  }

  size_t input_dim() const { return W.rows(); }
  size_t hidden() const { return U.rows(); }
  size_t ParamCount() const { return W.size() + U.size() + b.size(); }

  bool operator==(const LstmParams&) const = default;
};

inline size_t LstmParamCount(size_t input_dim, size_t hidden) {
  return 4 * (input_dim + hidden + 1) * hidden;
}

// Everything backward needs from one cell evaluation.
template <typename T>
struct LstmStepCache {
  std::vector<T> x;
  std::vector<T> h_prev;
  std::vector<T> c_prev;
  std::vector<T> i, f, g, o;  // post-activation gates
  std::vector<T> c;
  std::vector<T> tanh_c;
};

template <typename T>
struct LstmStep {
  std::vector<T> h;
  std::vector<T> c;
  LstmStepCache<T> cache;
};

// One step: [zi zf zg zo] = x W + h_prev U + b, c = f*c_prev + i*g,
// h = o*tanh(c).
template <typename T>
LstmStep<T> LstmCellForward(const LstmParams<T>& p, std::span<const T> x,
                            std::span<const T> h_prev,
                            std::span<const T> c_prev);

template <typename T>
struct LstmSequence {
  Matrix<T> H;  // T x hidden
  std::vector<T> h_last;
  std::vector<T> c_last;
  std::vector<LstmStepCache<T>> caches;
};

template <typename T>
LstmSequence<T> LstmForward(const LstmParams<T>& p, const Matrix<T>& X,
                            std::span<const T> h0, std::span<const T> c0);

template <typename T>
struct LstmInputGrads {
  Matrix<T> dX;  // empty unless requested
  std::vector<T> dh0;
  std::vector<T> dc0;
};

// Backpropagation through time. dH holds dLoss/dH per step, dh_last and
// dc_last the gradient arriving at the final state. Parameter gradients are
// ACCUMULATED into `grads`, which must have the shape of `p`.
template <typename T>
LstmInputGrads<T> LstmBackward(const LstmParams<T>& p,
                               const std::vector<LstmStepCache<T>>& caches,
                               const Matrix<T>& dH, std::span<const T> dh_last,
                               std::span<const T> dc_last, LstmParams<T>& grads,
                               bool want_dx = true);

}  // namespace vidcap::nn

#endif  // VIDCAP_LSTM_H_
