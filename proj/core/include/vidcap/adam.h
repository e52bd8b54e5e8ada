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

#ifndef VIDCAP_ADAM_H_
#define VIDCAP_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "vidcap/tensor.h"

namespace vidcap::nn {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

// First/second moment estimates mirroring a parameter list.
template <typename T>
struct AdamState {
  AdamConfig config;
  uint64_t step = 0;
  std::vector<std::vector<T>> m;
  std::vector<std::vector<T>> v;

  bool operator==(const AdamState& o) const {
    return step == o.step && m == o.m && v == o.v;
  }
};

template <typename T>
AdamState<T> MakeAdamState(std::span<const TensorView<T>> params,
                           const AdamConfig& config);

// One Adam update with bias correction folded into the step size:
//   m = b1 m + (1 - b1) g;  v = b2 v + (1 - b2) g^2
//   p -= lr sqrt(1 - b2^t) / (1 - b1^t) * m / (sqrt(v) + eps)
// All gradients are checked for finiteness before anything is modified.
template <typename T>
void AdamStep(AdamState<T>& state, std::span<const TensorView<T>> params,
              std::span<const TensorView<const T>> grads);

}  // namespace vidcap::nn

#endif  // VIDCAP_ADAM_H_
